/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "emq/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracle.hpp"

namespace emq {
namespace {

IngestResult FromText(const std::string& text, InputFormat f) {
  std::istringstream in(text);
  return IngestCollect(in, f);
}

SampleRecord Rec(const std::string& id, std::vector<double> p,
                 std::vector<double> q) {
  const Codeframe cf = Codeframe::Numbered(p.size());
  return {id, ValidatePrevalence(cf, p), ValidatePrevalence(cf, q), std::nullopt};
}

TEST(IngestCsvTest, OneSample) {
  const auto r = FromText("sample_id,class,true,pred\ns1,a,0.2,0.25\ns1,b,0.8,0.75\n",
                          InputFormat::kCsv);
  ASSERT_TRUE(r.errors.empty());
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].sample_id, "s1");
  EXPECT_EQ(r.records[0].true_prev.codeframe().labels(),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(r.records[0].pred_prev[0], 0.25);
  EXPECT_FALSE(r.records[0].sample_size.has_value());
}

TEST(IngestCsvTest, ClassOrderFollowsFirstSample) {
  const auto r = FromText(
      "sample_id,class,true,pred\n"
      "s1,b,0.8,0.75\ns1,a,0.2,0.25\n"
      "s2,a,0.5,0.5\ns2,b,0.5,0.5\n",
      InputFormat::kCsv);
  ASSERT_TRUE(r.errors.empty());
  EXPECT_EQ(r.records[1].true_prev.codeframe().labels(),
            (std::vector<std::string>{"b", "a"}));
}

TEST(IngestCsvTest, NotNormalizedNamesTheSample) {
  const auto r = FromText("sample_id,class,true,pred\nbad,a,0.3,0.5\nbad,b,0.6,0.5\n",
                          InputFormat::kCsv);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code, ErrorCode::kNotNormalized);
  EXPECT_NE(r.errors[0].locus.find("bad"), std::string::npos);
}

TEST(IngestCsvTest, CollectsOneErrorPerBadRecord) {
  const auto r = FromText(
      "sample_id,class,true,pred\n"
      "s1,a,0.3,0.5\ns1,b,0.6,0.5\n"
      "s2,a,x,0.5\n"
      "s3,a,0.5,0.5\ns3,b,0.5,0.5\n"
      "s4,a,0.5,0.5\ns4,c,0.5,0.5\n",
      InputFormat::kCsv);
  ASSERT_EQ(r.errors.size(), 3u);
  EXPECT_EQ(r.errors[0].code, ErrorCode::kParseError);
  EXPECT_EQ(r.errors[0].locus, "line 4");
  EXPECT_EQ(r.records.size(), 1u);
}

TEST(IngestCsvTest, MixedCodeframes) {
  const auto r = FromText(
      "sample_id,class,true,pred\ns1,a,0.5,0.5\ns1,b,0.5,0.5\n"
      "s2,a,0.5,0.5\ns2,c,0.5,0.5\n",
      InputFormat::kCsv);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code, ErrorCode::kMixedCodeframes);
}

TEST(IngestCsvTest, DuplicateClassRow) {
  const auto r = FromText(
      "sample_id,class,true,pred\ns1,a,0.5,0.5\ns1,a,0.5,0.5\ns1,b,0.5,0.5\n",
      InputFormat::kCsv);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code, ErrorCode::kDuplicateSample);
}

TEST(IngestCsvTest, CountsVariant) {
  const auto r = FromText(
      "sample_id,class,true_count,pred_count\ns1,a,10,25\ns1,b,90,75\n",
      InputFormat::kCsv);
  ASSERT_TRUE(r.errors.empty());
  EXPECT_DOUBLE_EQ(r.records[0].true_prev[0], 0.1);
  EXPECT_DOUBLE_EQ(r.records[0].pred_prev[0], 0.25);
  EXPECT_EQ(r.records[0].sample_size, 100u);
}

TEST(IngestCsvTest, EmptyAndHeaderOnly) {
  EXPECT_TRUE(FromText("", InputFormat::kCsv).records.empty());
  EXPECT_TRUE(FromText("", InputFormat::kCsv).errors.empty());
  EXPECT_TRUE(FromText("sample_id,class,true,pred\n", InputFormat::kCsv).records.empty());
  EXPECT_EQ(FromText("id,x\n", InputFormat::kCsv).errors.at(0).code, ErrorCode::kParseError);
}

TEST(IngestJsonTest, RecordsWithSizes) {
  const auto r = FromText(
      R"([{"id": "s1", "size": 1000, "true": {"a": 0.01, "b": 0.99},
           "pred": {"a": 0.0101, "b": 0.9899}},
          {"id": "s2", "true": {"b": 0.5, "a": 0.5}, "pred": {"a": 0.4, "b": 0.6}}])",
      InputFormat::kJson);
  ASSERT_TRUE(r.errors.empty());
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].sample_size, 1000u);
  EXPECT_FALSE(r.records[1].sample_size.has_value());
  EXPECT_EQ(r.records[1].pred_prev[0], 0.4);
}

TEST(IngestJsonTest, Errors) {
  EXPECT_EQ(FromText("{", InputFormat::kJson).errors.at(0).code, ErrorCode::kParseError);
  EXPECT_EQ(FromText("{}", InputFormat::kJson).errors.at(0).code, ErrorCode::kParseError);
  const auto dup = FromText(
      R"([{"id": "s", "true": {"a": 0.5, "b": 0.5}, "pred": {"a": 0.5, "b": 0.5}},
          {"id": "s", "true": {"a": 0.5, "b": 0.5}, "pred": {"a": 0.5, "b": 0.5}}])",
      InputFormat::kJson);
  EXPECT_EQ(dup.errors.at(0).code, ErrorCode::kDuplicateSample);
  const auto bad_size = FromText(
      R"([{"id": "s", "size": 0, "true": {"a": 0.5, "b": 0.5}, "pred": {"a": 0.5, "b": 0.5}}])",
      InputFormat::kJson);
  EXPECT_EQ(bad_size.errors.at(0).code, ErrorCode::kInvalidSmoothing);
}

TEST(EvaluateTest, IdentityGivesZero) {
  const std::vector<Measure> ms(kMatrixMeasures.begin(), kMatrixMeasures.end());
  const auto report =
      EvaluateSamples({Rec("s", {0.3, 0.7}, {0.3, 0.7})}, ms,
                      {SmoothingConfig::FromEpsilon(1e-3), SmoothingMode::kPerMeasure});
  for (const auto& a : report.aggregates) {
    EXPECT_EQ(a.mean, 0.0);
    EXPECT_EQ(a.median, 0.0);
  }
}

TEST(EvaluateTest, MeanAndMedianOfTwo) {
  const std::vector<Measure> ms = {Measure::kAE};
  const auto report = EvaluateSamples(
      {Rec("b2", {0.2, 0.8}, {0.25, 0.75}), Rec("b3", {0.2, 0.8}, {0.7, 0.3})}, ms);
  EXPECT_NEAR(report.aggregates[0].mean, 0.275, 1e-15);
  EXPECT_NEAR(report.aggregates[0].median, 0.275, 1e-15);
}

TEST(EvaluateTest, FootnoteKldMeanIsDominatedByLargest) {
  std::vector<SampleRecord> records;
  for (double x : {0.0101, 0.0110, 0.0200}) {
    SampleRecord r = Rec(std::to_string(x), {0.01, 0.99}, {x, 1.0 - x});
    r.sample_size = 1000;
    records.push_back(r);
  }
  const std::vector<Measure> ms = {Measure::kKLD};
  const auto report = EvaluateSamples(records, ms);
  EXPECT_NEAR(report.aggregates[0].mean, 1.022e-3, 0.02 * 1.022e-3);
  EXPECT_NEAR(report.aggregates[0].median, 4.53e-5, 0.02 * 4.53e-5);
}

TEST(EvaluateTest, PerRecordEpsilonAndGlobalOverride) {
  SampleRecord r = Rec("s", {0.01, 0.99}, {0.02, 0.98});
  r.sample_size = 1000;
  const std::vector<Measure> ms = {Measure::kKLD};
  const double per_record = EvaluateSamples({r}, ms).per_sample.at("s")[0];
  const EvalContext frozen{SmoothingConfig::FromEpsilon(5e-7), SmoothingMode::kPerMeasure};
  const double global = EvaluateSamples({r}, ms, frozen).per_sample.at("s")[0];
  const EvalContext at_size{SmoothingConfig::FromSampleSize(1000), SmoothingMode::kPerMeasure};
  EXPECT_EQ(per_record, EvaluateSamples({r}, ms, at_size).per_sample.at("s")[0]);
  EXPECT_NE(per_record, global);
}

TEST(EvaluateTest, Errors) {
  const std::vector<Measure> ms = {Measure::kAE};
  try {
    EvaluateSamples({}, ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  try {
    EvaluateSamples({Rec("a", {0.5, 0.5}, {0.5, 0.5}),
                     Rec("b", {0.2, 0.3, 0.5}, {0.2, 0.3, 0.5})},
                    ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedCodeframes);
  }
  try {
    EvaluateSamples({Rec("a", {0.5, 0.5}, {0.5, 0.5}), Rec("a", {0.5, 0.5}, {0.5, 0.5})}, ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateSample);
  }
}

TEST(EvaluateTest, PermutationInvariant) {
  std::mt19937_64 rng(2);
  std::vector<SampleRecord> records;
  for (int i = 0; i < 25; ++i) {
    records.push_back(Rec("s" + std::to_string(i), oracle::RandomSimplex(rng, 4),
                          oracle::RandomSimplex(rng, 4)));
  }
  const std::vector<Measure> ms = {Measure::kAE, Measure::kKLD, Measure::kDR};
  const EvalContext ctx{SmoothingConfig::FromEpsilon(1e-4), SmoothingMode::kPerMeasure};
  const auto base = EvaluateSamples(records, ms, ctx);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(records.begin(), records.end(), rng);
    EXPECT_EQ(EvaluateSamples(records, ms, ctx), base);
  }
}

TEST(AggregateTest, MedianEvenAndOdd) {
  const std::vector<double> odd = {3, 1, 2};
  const std::vector<double> even = {4, 1, 3, 2};
  EXPECT_EQ(Median(odd), 2.0);
  EXPECT_EQ(Median(even), 2.5);
  const std::vector<double> one = {0.125};
  EXPECT_EQ(Mean(one), 0.125);
  EXPECT_EQ(Median(one), 0.125);
}

TEST(ReportTest, JsonRoundTripIsExact) {
  std::mt19937_64 rng(9);
  std::vector<SampleRecord> records;
  for (int i = 0; i < 10; ++i) {
    records.push_back(Rec("id \"" + std::to_string(i) + "\"", oracle::RandomSimplex(rng, 3),
                          oracle::RandomSimplex(rng, 3)));
  }
  const std::vector<Measure> ms = {Measure::kNAE, Measure::kKLD, Measure::kPD};
  const EvalContext ctx{SmoothingConfig::FromEpsilon(1e-3), SmoothingMode::kPerMeasure};
  const auto report = EvaluateSamples(records, ms, ctx);
  EXPECT_EQ(ReportFromJson(ReportToJson(report)), report);
}

}  // namespace
}  // namespace emq
