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

// Error measures for quantification. Each scores a predicted prevalence
// against a true one; 0 means a perfect estimate.
//
// Smoothing policy: RAE, NRAE, DR, KLD, NKLD and PD replace both arguments
// by their additively smoothed versions; AE, NAE, SE, NSE, NAS and NSS use
// the raw values. EvalContext::mode can force smoothing on or off.

#ifndef EMQ_MEASURES_HPP_
#define EMQ_MEASURES_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "emq/distributions.hpp"

namespace emq {

enum class Measure {
  kAE,    // absolute error
  kNAE,   // normalized absolute error
  kRAE,   // relative absolute error
  kNRAE,  // normalized relative absolute error
  kSE,    // squared error
  kNSE,   // normalized squared error
  kDR,    // discordance ratio
  kKLD,   // Kullback-Leibler divergence
  kNKLD,  // logistic-normalized KLD
  kPD,    // Pearson (chi-square) divergence
  kNAS,   // normalized absolute score, binary only
  kNSS,   // normalized squared score, binary only
};

// The nine measures compared in the property matrix, in display order.
inline constexpr std::array<Measure, 9> kMatrixMeasures = {
    Measure::kAE, Measure::kNAE, Measure::kRAE, Measure::kNRAE, Measure::kSE,
    Measure::kDR, Measure::kKLD, Measure::kNKLD, Measure::kPD};

inline constexpr std::array<Measure, 12> kAllMeasures = {
    Measure::kAE,  Measure::kNAE, Measure::kRAE,  Measure::kNRAE,
    Measure::kSE,  Measure::kNSE, Measure::kDR,   Measure::kKLD,
    Measure::kNKLD, Measure::kPD, Measure::kNAS,  Measure::kNSS};

std::string_view MeasureName(Measure m);

// Case-insensitive; "bcd" (Bray-Curtis dissimilarity) is accepted as AE.
std::optional<Measure> ParseMeasure(std::string_view name);

// True for the measures computed on smoothed prevalences by default.
bool UsesSmoothing(Measure m);

// NAS and NSS are defined only on binary codeframes.
bool IsBinaryOnly(Measure m);

// True for the measures whose range is [0, 1] by construction.
bool IsNormalized(Measure m);

// True for the measures that upper_bound accepts: AE, RAE, SE, KLD, PD.
bool HasDistributionBound(Measure m);

enum class SmoothingMode {
  kPerMeasure,  // smooth only the measures listed above
  kAlways,
  kNever,
};

struct EvalContext {
  SmoothingConfig smoothing;
  SmoothingMode mode = SmoothingMode::kPerMeasure;
};

// The epsilon actually applied when scoring `m` under `ctx`.
double EffectiveEpsilon(Measure m, const EvalContext& ctx);

double AE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NAE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double RAE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NRAE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double SE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NSE(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double DR(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double KLD(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NKLD(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double PD(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NAS(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});
double NSS(const Prevalence& p, const Prevalence& p_hat, const EvalContext& ctx = {});

// Bray-Curtis dissimilarity between two distributions reduces to AE.
inline double BrayCurtis(const Prevalence& p, const Prevalence& p_hat,
                         const EvalContext& ctx = {}) {
  return AE(p, p_hat, ctx);
}

// Dispatches on `m`. Throws kDimensionMismatch when the codeframes differ,
// kNotBinary for NAS/NSS on non-binary codeframes and kUndefinedValue when a
// zero denominator or log argument arises without smoothing.
double Score(Measure m, const Prevalence& p, const Prevalence& p_hat,
             const EvalContext& ctx = {});

// Largest value D(p, .) can take for the un-normalized measures AE, RAE, SE,
// KLD and PD; this is the value at the perverse estimator, computed on the
// same (smoothed or raw) values the measure itself uses. Throws
// kUnsupportedMeasure for any other measure.
double UpperBound(Measure m, const Prevalence& p, const EvalContext& ctx = {});

// Overflow-safe form of 2 e^K / (e^K + 1) - 1, i.e. tanh(K / 2).
double LogisticNormalize(double kld);

// Kernels on raw spans, for callers that manage their own buffers. `epsilon`
// is applied as-is (the per-measure policy is not consulted). No dimension or
// normalization checks beyond what the formulas need.
namespace kernel {

double Score(Measure m, std::span<const double> p, std::span<const double> p_hat,
             double epsilon);

double UpperBound(Measure m, std::span<const double> p, double epsilon);

}  // namespace kernel

}  // namespace emq

#endif  // EMQ_MEASURES_HPP_
