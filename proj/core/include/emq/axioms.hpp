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

// Axiomatic property checks for quantification error measures.
//
// The harness is a falsifier. For a (measure, property) pair it first replays
// the known hand-built counterexample scenarios for that property, then draws
// random scenarios that satisfy the property's premises and tests its
// conclusion on each. The first violation yields a Falsified verdict carrying
// the scenario; otherwise the verdict is Unfalsified within the budget. A
// property is never reported as proven.
//
// Comparison semantics, with `tolerance` = tau:
//   equalities  (IMP, ABS, IoI at p_hat == p)   hold when |D' - D''| <= tau
//   strict      (MON, REL, IoI at p_hat != p)   require a margin > tau
//   IND                                          both orderings must agree
//                                                whenever both are decided
//                                                (|difference| > tau)
//   MAX                                          suprema differ by > tau
//                                                (tau_max for NKLD)

#ifndef EMQ_AXIOMS_HPP_
#define EMQ_AXIOMS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emq/distributions.hpp"
#include "emq/measures.hpp"

namespace emq {

enum class Property {
  kIoI,   // identity of indiscernibles
  kNN,    // non-negativity
  kMAX,   // constant maximum
  kMON,   // strict monotonicity
  kIMP,   // impartiality
  kREL,   // relativity
  kABS,   // absoluteness
  kIND,   // independence
  kBMON,  // binary reformulations of MON, IMP, REL, ABS
  kBIMP,
  kBREL,
  kBABS,
};

// Column order of the property matrix.
inline constexpr std::array<Property, 8> kMatrixProperties = {
    Property::kIoI, Property::kNN,  Property::kMAX, Property::kMON,
    Property::kIMP, Property::kREL, Property::kABS, Property::kIND};

inline constexpr std::array<Property, 12> kAllProperties = {
    Property::kIoI,  Property::kNN,   Property::kMAX,  Property::kMON,
    Property::kIMP,  Property::kREL,  Property::kABS,  Property::kIND,
    Property::kBMON, Property::kBIMP, Property::kBREL, Property::kBABS};

std::string_view PropertyName(Property p);

// Case-insensitive; accepts "B-MON", "BMON" and "b_mon" alike.
std::optional<Property> ParseProperty(std::string_view name);

bool IsBinaryFormulation(Property p);

// The binary reformulation of MON/IMP/REL/ABS; nullopt for the others.
std::optional<Property> BinaryFormulation(Property p);

// Defaults used by the harness.
inline constexpr std::uint64_t kDefaultSeed = 20190417;
inline constexpr std::size_t kDefaultBudget = 10000;
inline constexpr double kDefaultTolerance = 1e-9;
// Smoothing used by every generated scenario (sample size 10^6).
inline constexpr double kHarnessEpsilon = 5e-7;
// Tolerance on the suprema compared by the MAX check for NKLD, whose maximum
// is close to 1 but depends on p, |C| and epsilon.
inline constexpr double kNkldMaxTolerance = 5e-3;
// Minimum size of every perturbation and gap drawn by the scenario
// generators, so that strict conclusions are resolvable at `tolerance`.
inline constexpr double kMinSeparation = 1e-3;
// Number of steps of the grid laid along each simplex edge by the MAX check.
inline constexpr int kMaxGridSteps = 200;

// A concrete instance of a property's premises.
//
//   IoI, NN        true = {p},        pred = {p_hat}
//   MAX            true = {p', p''},  pred = {argmax for p', argmax for p''}
//   MON, IMP, IND  true = {p},        pred = {p_hat', p_hat''}
//   REL, ABS       true = {p', p''},  pred = {p_hat', p_hat''}
//
// `class_a` and `class_b` are the two perturbed classes (c1 and c2 in the
// property statements); `split` is the size of the leading block of classes
// that IND projects onto.
struct Scenario {
  Property property = Property::kIoI;
  Codeframe codeframe = Codeframe::Numbered(2);
  std::vector<Prevalence> true_dists;
  std::vector<Prevalence> pred_dists;
  SmoothingConfig smoothing;
  std::size_t class_a = 0;
  std::size_t class_b = 1;
  std::size_t split = 0;
  std::string origin;
};

// Throws Error(kInvalidScenario) unless `scenario` satisfies the premises of
// its property (up to 1e-12 on the stated equalities).
void CheckHypothesis(const Scenario& scenario);

struct Outcome {
  bool violated = false;
  // The measure values the conclusion compares, in scenario order.
  std::vector<double> values;
};

// Evaluates the property's conclusion on `scenario` for `m`.
Outcome Evaluate(Measure m, const Scenario& scenario, double tolerance,
                 double max_tolerance);

// Tolerance the MAX check uses for `m`.
double MaxTolerance(Measure m, double tolerance);

// The hand-built counterexample scenarios for MAX, IMP, REL and ABS, with
// epsilon = 5e-7. Throws kNoFixedScenario for other properties.
std::vector<Scenario> FixedScenarios(Property p);

enum class VerdictStatus { kFalsified, kUnfalsified };

struct Verdict {
  Measure measure = Measure::kAE;
  Property property = Property::kIoI;
  VerdictStatus status = VerdictStatus::kUnfalsified;
  std::optional<Scenario> counterexample;
  std::vector<double> values;  // offending measure values
  std::size_t fixed_scenarios_run = 0;
  std::size_t trials_run = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;

  bool falsified() const { return status == VerdictStatus::kFalsified; }
};

struct CheckOptions {
  std::size_t budget = kDefaultBudget;  // random trials; 0 = fixed only
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kDefaultTolerance;
  // Restricts random scenarios to this codeframe size; otherwise sizes are
  // drawn from {2, ..., 8} ({3, ..., 8} for IND, 2 for the binary forms).
  std::optional<std::size_t> classes;
  bool use_fixed_scenarios = true;
};

// Throws kIncompatiblePair when the measure cannot be evaluated on the
// codeframes the property needs (e.g. NAS with more than two classes) and
// kInvalidArgument when tolerance <= 0.
Verdict CheckProperty(Measure m, Property p, const CheckOptions& options = {});

// Generates the scenario used by random trial `trial` of a check. Exposed for
// replay and testing; the result depends only on its arguments.
Scenario GenerateScenario(Measure m, Property p, std::uint64_t seed,
                          std::size_t trial,
                          std::optional<std::size_t> classes = std::nullopt);

struct PropertyMatrix {
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  // cells[i][j]: kMatrixMeasures[i] against kMatrixProperties[j].
  std::array<std::array<Verdict, 8>, 9> cells;
  // The IND verdict that gated the binary reformulations, per measure.
  std::array<bool, 9> reduced_to_binary{};
};

// MON, IMP, REL and ABS are checked through their binary reformulations for
// every measure whose IND check is not falsified, and directly otherwise.
PropertyMatrix ComputePropertyMatrix(std::size_t budget,
                                     std::uint64_t seed = kDefaultSeed);

// Derivative of a binary KLD or PD (summed over the two classes, no 1/|C|
// factor) with respect to the error magnitude |a - x|, where a is the true
// and x the predicted prevalence of the first class. Throws kDomainError
// unless a, x are in (0, 1) and a != x; kUnsupportedMeasure for other
// measures.
double BMonDerivative(Measure m, double a, double x);

}  // namespace emq

#endif  // EMQ_AXIOMS_HPP_
