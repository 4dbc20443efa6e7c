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

// Scoring many test samples at once and summarizing the scores by mean and
// median.
//
// Input formats:
//   CSV, long form   sample_id,class,true,pred              one row per class
//   CSV, counts      sample_id,class,true_count,pred_count  sample size is the
//                                                            sum of true counts
//   JSON             [{"id": "s1", "size": 1000,
//                      "true": {"a": 0.2, "b": 0.8},
//                      "pred": {"a": 0.25, "b": 0.75}}, ...]
//
// The first sample fixes the codeframe (classes in file order); later samples
// may list the same classes in any order.

#ifndef EMQ_EVALUATION_HPP_
#define EMQ_EVALUATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emq/distributions.hpp"
#include "emq/error.hpp"
#include "emq/measures.hpp"

namespace emq {

struct SampleRecord {
  std::string sample_id;
  Prevalence true_prev;
  Prevalence pred_prev;
  std::optional<std::uint64_t> sample_size;
};

enum class InputFormat { kCsv, kJson };

std::optional<InputFormat> ParseInputFormat(std::string_view name);

// One rejected record (or line, for syntax errors).
struct RecordError {
  std::string locus;  // "line 7" or "sample 's3'"
  ErrorCode code;
  std::string message;
};

struct IngestResult {
  std::vector<SampleRecord> records;
  std::vector<RecordError> errors;
};

// Parses and validates every record, collecting one error per bad record
// instead of stopping at the first.
IngestResult IngestCollect(std::istream& in, InputFormat format);

// Like IngestCollect but throws the first error.
std::vector<SampleRecord> Ingest(std::istream& in, InputFormat format);
std::vector<SampleRecord> IngestFile(const std::string& path, InputFormat format);

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct MultiSampleReport {
  std::vector<Measure> measures;
  // sample_id -> one score per entry of `measures`.
  std::map<std::string, std::vector<double>> per_sample;
  // One entry per measure, aligned with `measures`.
  std::vector<Aggregate> aggregates;

  friend bool operator==(const MultiSampleReport&,
                         const MultiSampleReport&) = default;
};

// Scores every record with every measure. When `ctx.smoothing` is disabled,
// records carrying a sample size are smoothed with 1 / (2 |sample|);
// otherwise ctx.smoothing applies to all records alike. Throws kEmptyInput,
// kMixedCodeframes, kDuplicateSample or any measure error.
MultiSampleReport EvaluateSamples(const std::vector<SampleRecord>& records,
                                  std::span<const Measure> measures,
                                  const EvalContext& ctx = {});

double Mean(std::span<const double> values);
// Midpoint of the two central values for even lengths.
double Median(std::span<const double> values);

// JSON with "measures", "per_sample" and "aggregates"; numbers carry 17
// significant digits so reading the text back restores every value exactly.
std::string ReportToJson(const MultiSampleReport& report);
MultiSampleReport ReportFromJson(std::string_view text);

}  // namespace emq

#endif  // EMQ_EVALUATION_HPP_
