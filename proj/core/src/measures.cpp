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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "emq/error.hpp"

namespace emq {
namespace {

// Smoothed values computed on the fly, so the kernels never allocate.
class SmoothedView {
 public:
  SmoothedView(std::span<const double> values, double epsilon)
      : values_(values), epsilon_(epsilon) {
    if (epsilon_ > 0.0) {
      const double sum = std::accumulate(values.begin(), values.end(), 0.0);
      denominator_ = epsilon_ * static_cast<double>(values.size()) + sum;
    }
  }

  double operator[](std::size_t i) const {
    return epsilon_ > 0.0 ? (epsilon_ + values_[i]) / denominator_ : values_[i];
  }
  std::size_t size() const { return values_.size(); }

  // Images of 0 and 1 under the smoothing map of a normalized vector; these
  // are the entries of a smoothed point mass.
  double SmoothedZero() const {
    return epsilon_ / (epsilon_ * static_cast<double>(size()) + 1.0);
  }
  double SmoothedOne() const {
    return (epsilon_ + 1.0) / (epsilon_ * static_cast<double>(size()) + 1.0);
  }

 private:
  std::span<const double> values_;
  double epsilon_;
  double denominator_ = 1.0;
};

[[noreturn]] void Undefined(std::string_view measure, std::string_view what) {
  throw Error(ErrorCode::kUndefinedValue,
              std::string(measure) + " is undefined: " + std::string(what) +
                  " (enable smoothing)");
}

std::size_t ArgMin(const SmoothedView& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return best;
}

double SumAbsDiff(const SmoothedView& p, const SmoothedView& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(q[i] - p[i]);
  return total;
}

double SumSquaredDiff(const SmoothedView& p, const SmoothedView& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    total += d * d;
  }
  return total;
}

double RelativeSum(const SmoothedView& p, const SmoothedView& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) Undefined("RAE", "zero true prevalence");
    total += std::abs(q[i] - p[i]) / p[i];
  }
  return total;
}

double KullbackLeibler(const SmoothedView& p, const SmoothedView& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi == 0.0) continue;
    const double qi = q[i];
    if (qi == 0.0) Undefined("KLD", "zero predicted prevalence");
    total += pi * std::log(pi / qi);
  }
  // Rounding can leave a tiny negative residue when q is very close to p.
  return std::max(total, 0.0);
}

// Value of each bounded measure at the (smoothed) perverse estimator.
double ZAbsolute(const SmoothedView& p) {
  const std::size_t k = ArgMin(p);
  const double c = static_cast<double>(p.size());
  const double m = p[k];
  const double e0 = p.SmoothedZero();
  const double e1 = p.SmoothedOne();
  return ((e1 - m) + (1.0 - m) - (c - 1.0) * e0) / c;
}

double ZRelative(const SmoothedView& p) {
  const std::size_t k = ArgMin(p);
  const double m = p[k];
  if (m == 0.0) Undefined("RAE bound", "zero true prevalence");
  const double e0 = p.SmoothedZero();
  const double e1 = p.SmoothedOne();
  double total = (e1 - m) / m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != k) total += (p[i] - e0) / p[i];
  }
  return total / static_cast<double>(p.size());
}

double ZSquared(const SmoothedView& p) {
  const std::size_t k = ArgMin(p);
  const double m = p[k];
  const double e0 = p.SmoothedZero();
  const double e1 = p.SmoothedOne();
  double total = (e1 - m) * (e1 - m);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != k) total += (p[i] - e0) * (p[i] - e0);
  }
  return total / static_cast<double>(p.size());
}

double ZKullbackLeibler(const SmoothedView& p) {
  const std::size_t k = ArgMin(p);
  const double e0 = p.SmoothedZero();
  const double e1 = p.SmoothedOne();
  if (e0 == 0.0) Undefined("KLD bound", "unbounded without smoothing");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi == 0.0) continue;
    total += pi * std::log(pi / (i == k ? e1 : e0));
  }
  return total;
}

double ZPearson(const SmoothedView& p) {
  const std::size_t k = ArgMin(p);
  const double e0 = p.SmoothedZero();
  const double e1 = p.SmoothedOne();
  if (e0 == 0.0) Undefined("PD bound", "unbounded without smoothing");
  double total = (p[k] - e1) * (p[k] - e1) / e1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != k) total += (p[i] - e0) * (p[i] - e0) / e0;
  }
  return total / static_cast<double>(p.size());
}

void RequireBinary(Measure m, std::size_t size) {
  if (size != 2) {
    throw Error(ErrorCode::kNotBinary,
                std::string(MeasureName(m)) + " needs exactly 2 classes, got " +
                    std::to_string(size));
  }
}

}  // namespace

std::string_view MeasureName(Measure m) {
  switch (m) {
    case Measure::kAE: return "AE";
    case Measure::kNAE: return "NAE";
    case Measure::kRAE: return "RAE";
    case Measure::kNRAE: return "NRAE";
    case Measure::kSE: return "SE";
    case Measure::kNSE: return "NSE";
    case Measure::kDR: return "DR";
    case Measure::kKLD: return "KLD";
    case Measure::kNKLD: return "NKLD";
    case Measure::kPD: return "PD";
    case Measure::kNAS: return "NAS";
    case Measure::kNSS: return "NSS";
  }
  return "?";
}

std::optional<Measure> ParseMeasure(std::string_view name) {
  std::string upper(name);
  for (char& ch : upper) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  if (upper == "BCD") return Measure::kAE;
  for (Measure m : kAllMeasures) {
    if (upper == MeasureName(m)) return m;
  }
  return std::nullopt;
}

bool UsesSmoothing(Measure m) {
  switch (m) {
    case Measure::kRAE:
    case Measure::kNRAE:
    case Measure::kDR:
    case Measure::kKLD:
    case Measure::kNKLD:
    case Measure::kPD:
      return true;
    default:
      return false;
  }
}

bool IsBinaryOnly(Measure m) {
  return m == Measure::kNAS || m == Measure::kNSS;
}

bool IsNormalized(Measure m) {
  switch (m) {
    case Measure::kNAE:
    case Measure::kNRAE:
    case Measure::kNSE:
    case Measure::kNKLD:
    case Measure::kNAS:
    case Measure::kNSS:
      return true;
    default:
      return false;
  }
}

bool HasDistributionBound(Measure m) {
  switch (m) {
    case Measure::kAE:
    case Measure::kRAE:
    case Measure::kSE:
    case Measure::kKLD:
    case Measure::kPD:
      return true;
    default:
      return false;
  }
}

double EffectiveEpsilon(Measure m, const EvalContext& ctx) {
  switch (ctx.mode) {
    case SmoothingMode::kAlways: return ctx.smoothing.epsilon();
    case SmoothingMode::kNever: return 0.0;
    case SmoothingMode::kPerMeasure: break;
  }
  return UsesSmoothing(m) ? ctx.smoothing.epsilon() : 0.0;
}

double LogisticNormalize(double kld) { return std::tanh(kld / 2.0); }

namespace kernel {

double Score(Measure m, std::span<const double> p_raw,
             std::span<const double> q_raw, double epsilon) {
  const SmoothedView p(p_raw, epsilon);
  const SmoothedView q(q_raw, epsilon);
  const double c = static_cast<double>(p.size());
  switch (m) {
    case Measure::kAE:
      return SumAbsDiff(p, q) / c;
    case Measure::kNAE:
      return (SumAbsDiff(p, q) / c) / ZAbsolute(p);
    case Measure::kRAE:
      return RelativeSum(p, q) / c;
    case Measure::kNRAE:
      return (RelativeSum(p, q) / c) / ZRelative(p);
    case Measure::kSE:
      return SumSquaredDiff(p, q) / c;
    case Measure::kNSE:
      return (SumSquaredDiff(p, q) / c) / ZSquared(p);
    case Measure::kDR: {
      double total = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double hi = std::max(p[i], q[i]);
        if (hi == 0.0) Undefined("DR", "both prevalences are zero");
        total += std::abs(p[i] - q[i]) / hi;
      }
      return total / c;
    }
    case Measure::kKLD:
      return KullbackLeibler(p, q);
    case Measure::kNKLD:
      return LogisticNormalize(KullbackLeibler(p, q));
    case Measure::kPD: {
      double total = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0.0) Undefined("PD", "zero predicted prevalence");
        const double d = p[i] - q[i];
        total += d * d / q[i];
      }
      return total / c;
    }
    case Measure::kNAS:
    case Measure::kNSS: {
      RequireBinary(m, p.size());
      const double ratio =
          std::abs(p[0] - q[0]) / std::max(p[0], 1.0 - p[0]);
      return m == Measure::kNAS ? ratio : ratio * ratio;
    }
  }
  return 0.0;
}

double UpperBound(Measure m, std::span<const double> p_raw, double epsilon) {
  const SmoothedView p(p_raw, epsilon);
  switch (m) {
    case Measure::kAE: return ZAbsolute(p);
    case Measure::kRAE: return ZRelative(p);
    case Measure::kSE: return ZSquared(p);
    case Measure::kKLD: return ZKullbackLeibler(p);
    case Measure::kPD: return ZPearson(p);
    default:
      throw Error(ErrorCode::kUnsupportedMeasure,
                  std::string(MeasureName(m)) +
                      " has no distribution-dependent bound");
  }
}

}  // namespace kernel

double Score(Measure m, const Prevalence& p, const Prevalence& p_hat,
             const EvalContext& ctx) {
  if (!(p.codeframe() == p_hat.codeframe())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "true and predicted prevalences use different codeframes");
  }
  if (IsBinaryOnly(m)) RequireBinary(m, p.size());
  return kernel::Score(m, p.values(), p_hat.values(), EffectiveEpsilon(m, ctx));
}

double UpperBound(Measure m, const Prevalence& p, const EvalContext& ctx) {
  return kernel::UpperBound(m, p.values(), EffectiveEpsilon(m, ctx));
}

double AE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kAE, p, q, ctx);
}
double NAE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNAE, p, q, ctx);
}
double RAE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kRAE, p, q, ctx);
}
double NRAE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNRAE, p, q, ctx);
}
double SE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kSE, p, q, ctx);
}
double NSE(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNSE, p, q, ctx);
}
double DR(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kDR, p, q, ctx);
}
double KLD(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kKLD, p, q, ctx);
}
double NKLD(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNKLD, p, q, ctx);
}
double PD(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kPD, p, q, ctx);
}
double NAS(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNAS, p, q, ctx);
}
double NSS(const Prevalence& p, const Prevalence& q, const EvalContext& ctx) {
  return Score(Measure::kNSS, p, q, ctx);
}

}  // namespace emq
