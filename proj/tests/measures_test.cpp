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

#include "emq/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "emq/error.hpp"
#include "oracle.hpp"

namespace emq {
namespace {

constexpr double kEps = 5e-7;

Prevalence Bin(double x) {
  const std::vector<double> v = {x, 1.0 - x};
  return ValidatePrevalence(Codeframe::Numbered(2), v);
}

Prevalence Make(const std::vector<double>& v) {
  return ValidatePrevalence(Codeframe::Numbered(v.size()), v);
}

EvalContext Ctx(double eps) { return {SmoothingConfig::FromEpsilon(eps), SmoothingMode::kPerMeasure}; }

TEST(NamesTest, ParseRoundTripAndAliases) {
  for (Measure m : kAllMeasures) EXPECT_EQ(ParseMeasure(MeasureName(m)), m);
  EXPECT_EQ(ParseMeasure("kld"), Measure::kKLD);
  EXPECT_EQ(ParseMeasure("BCD"), Measure::kAE);
  EXPECT_FALSE(ParseMeasure("hellinger").has_value());
}

TEST(PolicyTest, SmoothedMeasures) {
  for (Measure m : {Measure::kRAE, Measure::kNRAE, Measure::kDR, Measure::kKLD,
                    Measure::kNKLD, Measure::kPD}) {
    EXPECT_TRUE(UsesSmoothing(m)) << MeasureName(m);
  }
  for (Measure m : {Measure::kAE, Measure::kNAE, Measure::kSE, Measure::kNSE}) {
    EXPECT_FALSE(UsesSmoothing(m)) << MeasureName(m);
  }
  EXPECT_EQ(EffectiveEpsilon(Measure::kAE, {SmoothingConfig::FromEpsilon(0.1),
                                            SmoothingMode::kAlways}),
            0.1);
  EXPECT_EQ(EffectiveEpsilon(Measure::kKLD, {SmoothingConfig::FromEpsilon(0.1),
                                             SmoothingMode::kNever}),
            0.0);
}

struct Golden {
  Measure m;
  double p, q, eps, expected, tol;
};

class GoldenTest : public ::testing::TestWithParam<Golden> {};

TEST_P(GoldenTest, MatchesTable) {
  const Golden g = GetParam();
  EXPECT_NEAR(Score(g.m, Bin(g.p), Bin(g.q), Ctx(g.eps)), g.expected, g.tol)
      << MeasureName(g.m);
}

INSTANTIATE_TEST_SUITE_P(
    PrintedValues, GoldenTest,
    ::testing::Values(
        Golden{Measure::kAE, 0.20, 0.25, 0, 0.0500, 5e-5},
        Golden{Measure::kAE, 0.01, 1.00, 0, 0.9900, 5e-5},
        Golden{Measure::kNAE, 0.01, 1.00, 0, 1.0000, 5e-5},
        Golden{Measure::kNAE, 0.20, 0.25, 0, 0.0625, 5e-5},
        Golden{Measure::kRAE, 0.20, 0.25, kEps, 0.1562, 5e-4},
        Golden{Measure::kRAE, 0.01, 1.00, kEps, 49.9975, 5e-5},
        Golden{Measure::kNRAE, 0.01, 1.00, kEps, 1.0000, 5e-5},
        Golden{Measure::kNRAE, 0.20, 0.25, kEps, 0.0625, 5e-5},
        Golden{Measure::kSE, 0.20, 0.25, 0, 0.0025, 5e-5},
        Golden{Measure::kSE, 0.01, 1.00, 0, 0.9801, 5e-5},
        Golden{Measure::kNSE, 0.20, 0.25, 0, 0.00390625, 1e-15},
        Golden{Measure::kDR, 0.20, 0.25, kEps, 0.1312, 5e-4},
        Golden{Measure::kDR, 0.20, 0.15, kEps, 0.1544, 5e-5},
        Golden{Measure::kKLD, 0.20, 0.25, kEps, 0.0070, 5e-5},
        Golden{Measure::kKLD, 0.01, 1.00, kEps, 14.3076, 5e-4},
        Golden{Measure::kNKLD, 0.20, 0.25, kEps, 0.0035, 5e-5},
        Golden{Measure::kNKLD, 0.49, 1.00, kEps, 0.9975, 5e-4},
        Golden{Measure::kPD, 0.20, 0.25, kEps, 0.006667, 5e-7},
        Golden{Measure::kNAS, 0.20, 0.25, 0, 0.0625, 1e-15},
        Golden{Measure::kNSS, 0.20, 0.70, 0, 0.390625, 1e-15}));

TEST(MeasuresTest, PdPerverseIsLarge) {
  // Matches the printed 980100.0004 to within half a unit.
  EXPECT_NEAR(PD(Bin(0.01), Bin(1.0), Ctx(kEps)), 980100.0004, 0.5);
}

TEST(MeasuresTest, ZeroExactlyOnIdentity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = t % 3 == 0 ? 2 : 2 + t % 7;
    const Prevalence p = Make(oracle::RandomSimplex(rng, n));
    for (Measure m : kAllMeasures) {
      if (IsBinaryOnly(m) && n != 2) continue;
      EXPECT_EQ(Score(m, p, p, Ctx(kEps)), 0.0) << MeasureName(m);
    }
  }
}

TEST(MeasuresTest, AgreesWithOracle) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto p = oracle::RandomSimplex(rng, n);
    const auto q = oracle::RandomSimplex(rng, n);
    const double eps = t % 2 ? kEps : 1e-3;
    for (Measure m : kAllMeasures) {
      if (IsBinaryOnly(m) && n != 2) continue;
      const long double want =
          oracle::Score<long double>(m, oracle::Wide(p), oracle::Wide(q), eps);
      const double got = Score(m, Make(p), Make(q), Ctx(eps));
      EXPECT_NEAR(got, static_cast<double>(want), 1e-12 * (1.0 + std::abs(static_cast<double>(want))))
          << MeasureName(m) << " trial " << t;
    }
  }
}

TEST(MeasuresTest, UndefinedWithoutSmoothing) {
  const Prevalence zero = Make({0.0, 0.5, 0.5});
  const Prevalence q = Make({0.2, 0.3, 0.5});
  EXPECT_THROW(RAE(zero, q), Error);
  EXPECT_THROW(KLD(q, zero), Error);
  EXPECT_THROW(PD(q, zero), Error);
  try {
    KLD(q, zero);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedValue);
  }
  // 0 * log(0 / q) counts as 0.
  EXPECT_NO_THROW(KLD(zero, q));
  EXPECT_TRUE(std::isfinite(KLD(zero, q)));
}

TEST(MeasuresTest, BinaryOnlyMeasuresRejectWiderCodeframes) {
  const Prevalence p = Make({0.2, 0.3, 0.5});
  try {
    NAS(p, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotBinary);
  }
}

TEST(MeasuresTest, CodeframeMismatch) {
  try {
    AE(Make({0.5, 0.5}), Make({0.2, 0.3, 0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(MeasuresTest, BrayCurtisIsAe) {
  EXPECT_EQ(BrayCurtis(Bin(0.3), Bin(0.6)), AE(Bin(0.3), Bin(0.6)));
}

TEST(BoundTest, Examples) {
  EXPECT_NEAR(UpperBound(Measure::kKLD, Bin(0.01), Ctx(1.0 / 2000)), 7.46, 0.005);
  EXPECT_NEAR(UpperBound(Measure::kAE, Bin(0.01)), 0.99, 1e-15);
  EXPECT_NEAR(UpperBound(Measure::kRAE, Bin(0.20)), 2.5, 1e-15);
  EXPECT_THROW(UpperBound(Measure::kDR, Bin(0.2)), Error);
}

TEST(BoundTest, EqualsOracleAtPerverse) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto p = oracle::RandomSimplex(rng, n);
    for (Measure m : {Measure::kAE, Measure::kRAE, Measure::kSE, Measure::kKLD,
                      Measure::kPD}) {
      const long double want = oracle::Bound<long double>(m, oracle::Wide(p), kEps);
      const double got = UpperBound(m, Make(p), Ctx(kEps));
      EXPECT_NEAR(got, static_cast<double>(want), 1e-9 * static_cast<double>(want))
          << MeasureName(m);
    }
  }
}

TEST(BoundTest, NormalizedMeasuresReachOneAtPerverse) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const Prevalence p = Make(oracle::RandomSimplex(rng, 2 + t % 7));
    const Prevalence worst = PerverseEstimator(p);
    for (Measure m : {Measure::kNAE, Measure::kNRAE, Measure::kNSE}) {
      EXPECT_NEAR(Score(m, p, worst, Ctx(kEps)), 1.0, 1e-9) << MeasureName(m);
      const Prevalence q = Make(oracle::RandomSimplex(rng, p.size()));
      EXPECT_LE(Score(m, p, q, Ctx(kEps)), 1.0 + 1e-12) << MeasureName(m);
    }
  }
}

TEST(BoundTest, ZeroEpsilonKldIsUndefined) {
  EXPECT_THROW(UpperBound(Measure::kKLD, Bin(0.3)), Error);
  EXPECT_THROW(UpperBound(Measure::kPD, Bin(0.3)), Error);
}

TEST(NkldTest, SaturatingFormMatchesLogistic) {
  for (double k = 0.0; k <= 700.0; k += 0.37) {
    const long double e = std::exp(static_cast<long double>(k));
    const long double direct = 2.0L * e / (e + 1.0L) - 1.0L;
    EXPECT_NEAR(LogisticNormalize(k), static_cast<double>(direct), 1e-15) << k;
  }
  EXPECT_EQ(LogisticNormalize(1e6), 1.0);
}

TEST(KernelTest, SpanAndPrevalenceAgree) {
  const std::vector<double> p = {0.2, 0.3, 0.5};
  const std::vector<double> q = {0.1, 0.6, 0.3};
  for (Measure m : kMatrixMeasures) {
    EXPECT_EQ(kernel::Score(m, p, q, EffectiveEpsilon(m, Ctx(kEps))),
              Score(m, Make(p), Make(q), Ctx(kEps)));
  }
}

}  // namespace
}  // namespace emq
