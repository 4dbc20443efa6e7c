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

#include "emq/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "emq/error.hpp"

namespace emq {
namespace {

// Slack on the equalities a scenario's premises state exactly.
constexpr double kPremiseTolerance = 1e-12;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t TrialSeed(std::uint64_t seed, std::size_t trial) {
  return SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(trial) + 1));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * unit_(rng_);
  }

  std::size_t Index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool Coin() { return unit_(rng_) < 0.5; }

  // Uniform point of the simplex of dimension n, scaled to `mass`.
  std::vector<double> Dirichlet(std::size_t n, double mass = 1.0) {
    std::vector<double> out(n);
    double total = 0.0;
    for (double& v : out) {
      v = exponential_(rng_);
      total += v;
    }
    for (double& v : out) v = v / total * mass;
    return out;
  }

  // Two distinct classes, in random order.
  std::pair<std::size_t, std::size_t> Pair(std::size_t n) {
    const std::size_t a = Index(0, n - 1);
    std::size_t b = Index(0, n - 2);
    if (b >= a) ++b;
    return {a, b};
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

Prevalence Build(const Codeframe& cf, std::vector<double> values) {
  for (double& v : values) v = std::max(v, 0.0);
  return ValidatePrevalence(cf, values);
}

// Fills every class except a and b of a vector of size n from `rest`.
std::vector<double> Compose(std::size_t n, std::size_t a, double va,
                            std::size_t b, double vb,
                            const std::vector<double>& rest) {
  std::vector<double> out(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == a) {
      out[i] = va;
    } else if (i == b) {
      out[i] = vb;
    } else {
      out[i] = rest[k++];
    }
  }
  return out;
}

Scenario Skeleton(Property p, std::size_t n, double epsilon) {
  Scenario s;
  s.property = p;
  s.codeframe = Codeframe::Numbered(n);
  s.smoothing = epsilon > 0.0 ? SmoothingConfig::FromEpsilon(epsilon)
                              : SmoothingConfig::None();
  return s;
}

Property Base(Property p) {
  switch (p) {
    case Property::kBMON: return Property::kMON;
    case Property::kBIMP: return Property::kIMP;
    case Property::kBREL: return Property::kREL;
    case Property::kBABS: return Property::kABS;
    default: return p;
  }
}

bool Near(double a, double b) { return std::abs(a - b) <= kPremiseTolerance; }

[[noreturn]] void Invalid(const Scenario& s, const std::string& why) {
  throw Error(ErrorCode::kInvalidScenario,
              std::string(PropertyName(s.property)) + " premise violated: " + why);
}

// Supremum of D(p, .) over the perverse estimator, every vertex and a grid
// on each edge leaving the perverse vertex. Returns the maximizing point.
std::vector<double> Supremum(Measure m, std::span<const double> p,
                             double epsilon) {
  const std::size_t n = p.size();
  const std::size_t k = LeastPrevalentClass(p);
  std::vector<double> q(n, 0.0);
  std::vector<double> best(n, 0.0);
  best[k] = 1.0;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&] {
    double v;
    try {
      v = kernel::Score(m, p, q, epsilon);
    } catch (const Error&) {
      return;  // undefined without smoothing; not a finite candidate
    }
    if (v > best_value) {
      best_value = v;
      best = q;
    }
  };
  q[k] = 1.0;
  consider();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    std::fill(q.begin(), q.end(), 0.0);
    q[j] = 1.0;
    consider();
    for (int i = 1; i < kMaxGridSteps; ++i) {
      const double t = static_cast<double>(i) / kMaxGridSteps;
      q[k] = t;
      q[j] = 1.0 - t;
      consider();
    }
  }
  return best;
}

// --- generators -----------------------------------------------------------

Scenario GenIoI(Sampler& r, std::size_t n) {
  Scenario s = Skeleton(Property::kIoI, n, kHarnessEpsilon);
  const auto p = r.Dirichlet(n);
  std::vector<double> q;
  do {
    q = r.Dirichlet(n);
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(q[i] - p[i]));
    if (gap >= kMinSeparation) break;
  } while (true);
  s.true_dists = {Build(s.codeframe, p)};
  s.pred_dists = {Build(s.codeframe, q)};
  return s;
}

Scenario GenNN(Sampler& r, std::size_t n) {
  Scenario s = Skeleton(Property::kNN, n, kHarnessEpsilon);
  s.true_dists = {Build(s.codeframe, r.Dirichlet(n))};
  s.pred_dists = {Build(s.codeframe, r.Dirichlet(n))};
  return s;
}

Scenario GenMAX(Measure m, Sampler& r, std::size_t n) {
  Scenario s = Skeleton(Property::kMAX, n, kHarnessEpsilon);
  const double eps =
      EffectiveEpsilon(m, EvalContext{s.smoothing, SmoothingMode::kPerMeasure});
  for (int i = 0; i < 2; ++i) {
    const auto p = r.Dirichlet(n);
    s.true_dists.push_back(Build(s.codeframe, p));
    s.pred_dists.push_back(Build(s.codeframe, Supremum(m, p, eps)));
  }
  return s;
}

Scenario GenMON(Sampler& r, std::size_t n, bool binary) {
  Scenario s = Skeleton(binary ? Property::kBMON : Property::kMON, n,
                        kHarnessEpsilon);
  std::vector<double> p;
  std::size_t a = 0, b = 1;
  do {
    p = r.Dirichlet(n);
    if (!binary) std::tie(a, b) = r.Pair(n);
  } while (p[a] < kMinSeparation);
  const double u = r.Uniform(kMinSeparation, p[a]);
  const double rest_mass = n > 2 ? r.Uniform(0.0, 1.0 - u - p[b]) : 0.0;
  const auto rest = r.Dirichlet(n - 2 > 0 ? n - 2 : 1, rest_mass);
  const double t = r.Uniform(kMinSeparation, u);
  const double qb = 1.0 - rest_mass - u;
  s.class_a = a;
  s.class_b = b;
  s.true_dists = {Build(s.codeframe, p)};
  s.pred_dists = {Build(s.codeframe, Compose(n, a, u, b, qb, rest)),
                  Build(s.codeframe, Compose(n, a, u - t, b, qb + t, rest))};
  return s;
}

Scenario GenIMP(Sampler& r, std::size_t n, bool binary) {
  Scenario s = Skeleton(binary ? Property::kBIMP : Property::kIMP, n,
                        kHarnessEpsilon);
  std::vector<double> p;
  std::size_t a = 0, b = 1;
  do {
    p = r.Dirichlet(n);
    if (!binary) std::tie(a, b) = r.Pair(n);
  } while (std::min(p[a], p[b]) < kMinSeparation);
  const double d = r.Uniform(kMinSeparation, std::min(p[a], p[b]));
  const auto rest = r.Dirichlet(n - 2 > 0 ? n - 2 : 1, 1.0 - p[a] - p[b]);
  s.class_a = a;
  s.class_b = b;
  s.true_dists = {Build(s.codeframe, p)};
  s.pred_dists = {Build(s.codeframe, Compose(n, a, p[a] + d, b, p[b] - d, rest)),
                  Build(s.codeframe, Compose(n, a, p[a] - d, b, p[b] + d, rest))};
  return s;
}

// Shared by REL and ABS, whose premises coincide.
Scenario GenRelAbs(Property prop, Sampler& r, std::size_t n, bool binary) {
  Scenario s = Skeleton(prop, n, kHarnessEpsilon);
  while (true) {
    auto p2 = r.Dirichlet(n);
    std::size_t a = 0, b = 1;
    if (!binary) std::tie(a, b) = r.Pair(n);
    if (p2[a] > p2[b]) std::swap(a, b);
    if (p2[b] - p2[a] < kMinSeparation) continue;
    const bool up = r.Coin();
    const double lo = up ? 0.0 : kMinSeparation;
    const double hi = p2[a] - kMinSeparation;
    if (hi <= lo) continue;
    const double p1a = r.Uniform(lo, hi);
    const double p1b = p2[a] + p2[b] - p1a;
    const double d_max = up ? p2[b] : p1a;
    if (d_max < kMinSeparation) continue;
    const double d = r.Uniform(kMinSeparation, d_max);
    const double sign = up ? 1.0 : -1.0;
    const auto rest = r.Dirichlet(n - 2 > 0 ? n - 2 : 1, 1.0 - p2[a] - p2[b]);
    auto p1 = p2;
    p1[a] = p1a;
    p1[b] = p1b;
    s.class_a = a;
    s.class_b = b;
    s.true_dists = {Build(s.codeframe, p1), Build(s.codeframe, p2)};
    s.pred_dists = {
        Build(s.codeframe,
              Compose(n, a, p1a + sign * d, b, p1b - sign * d, rest)),
        Build(s.codeframe,
              Compose(n, a, p2[a] + sign * d, b, p2[b] - sign * d, rest))};
    return s;
  }
}

// IND without smoothing; the projected block carries the same mass in the
// true and both predicted distributions.
Scenario GenIND(Sampler& r, std::size_t n) {
  Scenario s = Skeleton(Property::kIND, n, 0.0);
  const std::size_t k = r.Index(2, n - 1);
  const auto p = r.Dirichlet(n);
  const double mass = std::accumulate(p.begin(), p.begin() + k, 0.0);
  const auto tail = r.Dirichlet(n - k, 1.0 - mass);
  std::vector<double> q1 = r.Dirichlet(k, mass);
  std::vector<double> q2 = r.Dirichlet(k, mass);
  q1.insert(q1.end(), tail.begin(), tail.end());
  q2.insert(q2.end(), tail.begin(), tail.end());
  s.split = k;
  s.true_dists = {Build(s.codeframe, p)};
  s.pred_dists = {Build(s.codeframe, q1), Build(s.codeframe, q2)};
  return s;
}

std::size_t DrawSize(Measure m, Property p, Sampler& r,
                     std::optional<std::size_t> classes) {
  if (classes) return *classes;
  if (IsBinaryFormulation(p) || IsBinaryOnly(m)) return 2;
  if (p == Property::kIND) return r.Index(3, 8);
  return r.Index(2, 8);
}

void ValidateRequest(Measure m, Property p, const CheckOptions& o) {
  if (!(o.tolerance > 0.0) || !std::isfinite(o.tolerance)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  const std::string pair =
      std::string(MeasureName(m)) + "/" + std::string(PropertyName(p));
  if (o.classes && *o.classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a codeframe needs >= 2 classes");
  }
  if (IsBinaryOnly(m) && p == Property::kIND) {
    throw Error(ErrorCode::kIncompatiblePair,
                pair + ": IND needs codeframes of 3 or more classes");
  }
  if (IsBinaryOnly(m) && o.classes && *o.classes != 2) {
    throw Error(ErrorCode::kIncompatiblePair,
                pair + ": measure is defined on 2 classes only");
  }
  if (IsBinaryFormulation(p) && o.classes && *o.classes != 2) {
    throw Error(ErrorCode::kIncompatiblePair,
                pair + ": binary property on a non-binary codeframe");
  }
  if (p == Property::kIND && o.classes && *o.classes < 3) {
    throw Error(ErrorCode::kIncompatiblePair,
                pair + ": IND needs codeframes of 3 or more classes");
  }
}

bool HasFixedScenarios(Property p) {
  switch (Base(p)) {
    case Property::kMAX:
    case Property::kIMP:
    case Property::kREL:
    case Property::kABS:
      return p != Property::kBMON;
    default:
      return false;
  }
}

}  // namespace

std::string_view PropertyName(Property p) {
  switch (p) {
    case Property::kIoI: return "IoI";
    case Property::kNN: return "NN";
    case Property::kMAX: return "MAX";
    case Property::kMON: return "MON";
    case Property::kIMP: return "IMP";
    case Property::kREL: return "REL";
    case Property::kABS: return "ABS";
    case Property::kIND: return "IND";
    case Property::kBMON: return "B-MON";
    case Property::kBIMP: return "B-IMP";
    case Property::kBREL: return "B-REL";
    case Property::kBABS: return "B-ABS";
  }
  return "?";
}

std::optional<Property> ParseProperty(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Property p : kAllProperties) {
    std::string candidate;
    for (char c : PropertyName(p)) {
      if (c == '-') continue;
      candidate.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (candidate == key) return p;
  }
  return std::nullopt;
}

bool IsBinaryFormulation(Property p) {
  return p == Property::kBMON || p == Property::kBIMP || p == Property::kBREL ||
         p == Property::kBABS;
}

std::optional<Property> BinaryFormulation(Property p) {
  switch (p) {
    case Property::kMON: return Property::kBMON;
    case Property::kIMP: return Property::kBIMP;
    case Property::kREL: return Property::kBREL;
    case Property::kABS: return Property::kBABS;
    default: return std::nullopt;
  }
}

void CheckHypothesis(const Scenario& s) {
  const std::size_t n = s.codeframe.size();
  const auto expect = [&](std::size_t trues, std::size_t preds) {
    if (s.true_dists.size() != trues || s.pred_dists.size() != preds) {
      Invalid(s, "expected " + std::to_string(trues) + " true and " +
                     std::to_string(preds) + " predicted distributions");
    }
  };
  for (const auto* group : {&s.true_dists, &s.pred_dists}) {
    for (const auto& d : *group) {
      if (!(d.codeframe() == s.codeframe)) Invalid(s, "codeframe mismatch");
    }
  }
  if (IsBinaryFormulation(s.property) && n != 2) Invalid(s, "needs 2 classes");
  const std::size_t a = s.class_a, b = s.class_b;
  const Property base = Base(s.property);
  if ((base == Property::kMON || base == Property::kIMP ||
       base == Property::kREL || base == Property::kABS) &&
      (a >= n || b >= n || a == b)) {
    Invalid(s, "perturbed classes must be two distinct classes");
  }
  // Entries other than a and b agree between x and y.
  const auto same_elsewhere = [&](const Prevalence& x, const Prevalence& y) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != a && i != b && !Near(x[i], y[i])) return false;
    }
    return true;
  };

  switch (base) {
    case Property::kIoI:
    case Property::kNN:
      expect(1, 1);
      return;
    case Property::kMAX:
      expect(2, 2);
      return;
    case Property::kMON: {
      expect(1, 2);
      const auto& p = s.true_dists[0];
      const auto& q1 = s.pred_dists[0];
      const auto& q2 = s.pred_dists[1];
      if (!(q2[a] < q1[a] && q1[a] <= p[a] + kPremiseTolerance)) {
        Invalid(s, "need p''(c1) < p'(c1) <= p(c1)");
      }
      if (!(q2[b] > q1[b] && q1[b] >= p[b] - kPremiseTolerance)) {
        Invalid(s, "need p''(c2) > p'(c2) >= p(c2)");
      }
      if (!Near(q1[a] - q2[a], q2[b] - q1[b])) {
        Invalid(s, "shifts on c1 and c2 differ");
      }
      if (!same_elsewhere(q1, q2)) Invalid(s, "other classes differ");
      return;
    }
    case Property::kIMP: {
      expect(1, 2);
      const auto& p = s.true_dists[0];
      const auto& q1 = s.pred_dists[0];
      const auto& q2 = s.pred_dists[1];
      const double d = q1[a] - p[a];
      if (d < -kPremiseTolerance || !Near(p[b] - q1[b], d) ||
          !Near(p[a] - q2[a], d) || !Near(q2[b] - p[b], d)) {
        Invalid(s, "predictions are not symmetric shifts of p");
      }
      if (!same_elsewhere(q1, q2)) Invalid(s, "other classes differ");
      return;
    }
    case Property::kREL:
    case Property::kABS: {
      expect(2, 2);
      const auto& p1 = s.true_dists[0];
      const auto& p2 = s.true_dists[1];
      const auto& q1 = s.pred_dists[0];
      const auto& q2 = s.pred_dists[1];
      if (!(p1[a] < p2[a] && p2[a] < p2[b] && p2[b] < p1[b])) {
        Invalid(s, "need p'(c1) < p''(c1) < p''(c2) < p'(c2)");
      }
      if (!same_elsewhere(p1, p2)) Invalid(s, "true distributions differ elsewhere");
      const double d = q1[a] - p1[a];
      if (std::abs(d) <= kPremiseTolerance || !Near(p1[b] - q1[b], d) ||
          !Near(q2[a] - p2[a], d) || !Near(p2[b] - q2[b], d)) {
        Invalid(s, "predictions are not equal nonzero shifts");
      }
      if (!same_elsewhere(q1, q2)) Invalid(s, "predictions differ elsewhere");
      return;
    }
    case Property::kIND: {
      expect(1, 2);
      const std::size_t k = s.split;
      if (k < 2 || k >= n) Invalid(s, "split must leave >= 2 classes on the left and >= 1 on the right");
      const auto mass = [k](const Prevalence& x) {
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) total += x[i];
        return total;
      };
      const double m = mass(s.true_dists[0]);
      if (!Near(m, mass(s.pred_dists[0])) || !Near(m, mass(s.pred_dists[1]))) {
        Invalid(s, "projected block mass differs");
      }
      for (std::size_t i = k; i < n; ++i) {
        if (!Near(s.pred_dists[0][i], s.pred_dists[1][i])) {
          Invalid(s, "predictions differ outside the projected block");
        }
      }
      return;
    }
    default:
      return;
  }
}

double MaxTolerance(Measure m, double tolerance) {
  return m == Measure::kNKLD ? kNkldMaxTolerance : tolerance;
}

Outcome Evaluate(Measure m, const Scenario& s, double tol, double max_tol) {
  const EvalContext ctx{s.smoothing, SmoothingMode::kPerMeasure};
  const auto d = [&](const Prevalence& p, const Prevalence& q) {
    return Score(m, p, q, ctx);
  };
  Outcome out;
  switch (Base(s.property)) {
    case Property::kIoI: {
      const auto& p = s.true_dists[0];
      const double self = d(p, p);
      const double other = d(p, s.pred_dists[0]);
      out.values = {self, other};
      const bool distinct = !(p == s.pred_dists[0]);
      out.violated = std::abs(self) > tol || (distinct && other <= tol);
      break;
    }
    case Property::kNN: {
      const double v = d(s.true_dists[0], s.pred_dists[0]);
      out.values = {v};
      out.violated = v < -tol;
      break;
    }
    case Property::kMAX: {
      const double v1 = d(s.true_dists[0], s.pred_dists[0]);
      const double v2 = d(s.true_dists[1], s.pred_dists[1]);
      out.values = {v1, v2};
      out.violated = std::abs(v1 - v2) > max_tol;
      break;
    }
    case Property::kMON: {
      const double v1 = d(s.true_dists[0], s.pred_dists[0]);
      const double v2 = d(s.true_dists[0], s.pred_dists[1]);
      out.values = {v1, v2};
      out.violated = !(v2 - v1 > tol);
      break;
    }
    case Property::kIMP: {
      const double v1 = d(s.true_dists[0], s.pred_dists[0]);
      const double v2 = d(s.true_dists[0], s.pred_dists[1]);
      out.values = {v1, v2};
      out.violated = std::abs(v1 - v2) > tol;
      break;
    }
    case Property::kREL:
    case Property::kABS: {
      const double v1 = d(s.true_dists[0], s.pred_dists[0]);
      const double v2 = d(s.true_dists[1], s.pred_dists[1]);
      out.values = {v1, v2};
      out.violated = Base(s.property) == Property::kREL
                         ? !(v1 - v2 > tol)
                         : std::abs(v1 - v2) > tol;
      break;
    }
    case Property::kIND: {
      std::vector<std::size_t> block(s.split);
      std::iota(block.begin(), block.end(), std::size_t{0});
      const auto& p = s.true_dists[0];
      const auto& q1 = s.pred_dists[0];
      const auto& q2 = s.pred_dists[1];
      const double v1 = d(p, q1);
      const double v2 = d(p, q2);
      const auto pp = ProjectIndices(p, block);
      const double w1 = d(pp, ProjectIndices(q1, block));
      const double w2 = d(pp, ProjectIndices(q2, block));
      out.values = {v1, v2, w1, w2};
      out.violated = (v1 - v2 > tol && w2 - w1 > tol) ||
                     (v2 - v1 > tol && w1 - w2 > tol);
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<Scenario> FixedScenarios(Property p) {
  if (!HasFixedScenarios(p)) {
    throw Error(ErrorCode::kNoFixedScenario,
                "no fixed scenario for " + std::string(PropertyName(p)));
  }
  const Codeframe cf = Codeframe::Numbered(2);
  const auto prev = [&cf](double x) { return Build(cf, {x, 1.0 - x}); };
  Scenario s = Skeleton(p, 2, kHarnessEpsilon);
  s.codeframe = cf;
  switch (Base(p)) {
    case Property::kMAX:
      s.true_dists = {prev(0.01), prev(0.49)};
      s.pred_dists = {prev(1.0), prev(1.0)};
      s.origin = "fixed: max";
      break;
    case Property::kIMP:
      s.true_dists = {prev(0.20)};
      s.pred_dists = {prev(0.25), prev(0.15)};
      s.origin = "fixed: imp";
      break;
    case Property::kREL:
    case Property::kABS:
      s.true_dists = {prev(0.20), prev(0.25)};
      s.pred_dists = {prev(0.70), prev(0.75)};
      s.origin = Base(p) == Property::kREL ? "fixed: rel" : "fixed: abs";
      break;
    default:
      break;
  }
  CheckHypothesis(s);
  return {s};
}

Scenario GenerateScenario(Measure m, Property p, std::uint64_t seed,
                          std::size_t trial,
                          std::optional<std::size_t> classes) {
  Sampler r(TrialSeed(seed, trial));
  const std::size_t n = DrawSize(m, p, r, classes);
  Scenario s;
  switch (p) {
    case Property::kIoI: s = GenIoI(r, n); break;
    case Property::kNN: s = GenNN(r, n); break;
    case Property::kMAX: s = GenMAX(m, r, n); break;
    case Property::kMON: s = GenMON(r, n, false); break;
    case Property::kBMON: s = GenMON(r, 2, true); break;
    case Property::kIMP: s = GenIMP(r, n, false); break;
    case Property::kBIMP: s = GenIMP(r, 2, true); break;
    case Property::kREL:
    case Property::kABS: s = GenRelAbs(p, r, n, false); break;
    case Property::kBREL:
    case Property::kBABS: s = GenRelAbs(p, r, 2, true); break;
    case Property::kIND: s = GenIND(r, n); break;
  }
  s.origin = "random: trial " + std::to_string(trial);
  CheckHypothesis(s);
  return s;
}

Verdict CheckProperty(Measure m, Property p, const CheckOptions& o) {
  ValidateRequest(m, p, o);
  Verdict v;
  v.measure = m;
  v.property = p;
  v.budget = o.budget;
  v.seed = o.seed;
  v.tolerance = o.tolerance;
  const double max_tol = MaxTolerance(m, o.tolerance);

  const auto fail = [&](const Scenario& s, Outcome out) {
    v.status = VerdictStatus::kFalsified;
    v.counterexample = s;
    v.values = std::move(out.values);
  };

  const bool fixed_fits = !o.classes || *o.classes == 2;
  if (o.use_fixed_scenarios && fixed_fits && HasFixedScenarios(p)) {
    for (const auto& s : FixedScenarios(p)) {
      ++v.fixed_scenarios_run;
      Outcome out = Evaluate(m, s, o.tolerance, max_tol);
      if (out.violated) {
        fail(s, std::move(out));
        return v;
      }
    }
  }
  for (std::size_t t = 0; t < o.budget; ++t) {
    Scenario s = GenerateScenario(m, p, o.seed, t, o.classes);
    ++v.trials_run;
    // IoI is also checked at p_hat = p exactly, inside Evaluate.
    Outcome out = Evaluate(m, s, o.tolerance, max_tol);
    if (out.violated) {
      fail(s, std::move(out));
      return v;
    }
  }
  return v;
}

PropertyMatrix ComputePropertyMatrix(std::size_t budget, std::uint64_t seed) {
  PropertyMatrix matrix;
  matrix.budget = budget;
  matrix.seed = seed;
  CheckOptions options;
  options.budget = budget;
  options.seed = seed;
  for (std::size_t i = 0; i < kMatrixMeasures.size(); ++i) {
    const Measure m = kMatrixMeasures[i];
    const std::size_t ind_column = 7;
    const Verdict ind = CheckProperty(m, Property::kIND, options);
    matrix.reduced_to_binary[i] = !ind.falsified();
    for (std::size_t j = 0; j < kMatrixProperties.size(); ++j) {
      const Property p = kMatrixProperties[j];
      if (j == ind_column) {
        matrix.cells[i][j] = ind;
        continue;
      }
      const auto binary = BinaryFormulation(p);
      Verdict v = CheckProperty(
          m, binary && matrix.reduced_to_binary[i] ? *binary : p, options);
      // Report under the general property the cell stands for.
      v.property = p;
      matrix.cells[i][j] = std::move(v);
    }
  }
  return matrix;
}

double BMonDerivative(Measure m, double a, double x) {
  if (!(a > 0.0 && a < 1.0 && x > 0.0 && x < 1.0)) {
    throw Error(ErrorCode::kDomainError, "a and x must lie in (0, 1)");
  }
  if (a == x) {
    throw Error(ErrorCode::kDomainError, "a and x must differ");
  }
  switch (m) {
    case Measure::kKLD:
      return a > x ? (x - a) / ((x - 1.0) * x) : (a - x) / ((x - 1.0) * x);
    case Measure::kPD: {
      const double denom = x * x * (1.0 - x) * (1.0 - x);
      return a > x ? (a - x) * (a - 2.0 * a * x + x) / denom
                   : (x - a) * (a + x - 2.0 * a * x) / denom;
    }
    default:
      throw Error(ErrorCode::kUnsupportedMeasure,
                  "closed-form derivative available for KLD and PD only");
  }
}

}  // namespace emq
