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

// Codeframes, prevalence vectors and the transformations applied to them
// before scoring: additive smoothing, projection onto a sub-codeframe and the
// perverse (worst-case) estimator.
//
// All types are immutable values; every function here is pure.

#ifndef EMQ_DISTRIBUTIONS_HPP_
#define EMQ_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace emq {

// Absolute tolerance on |sum - 1| accepted when validating a prevalence.
inline constexpr double kSumTolerance = 1e-9;

// An ordered set of at least two distinct class labels. Copies share storage.
class Codeframe {
 public:
  explicit Codeframe(std::vector<std::string> labels);

  // Labels "c1", ..., "cN".
  static Codeframe Numbered(std::size_t size);

  std::size_t size() const { return labels_->size(); }
  const std::vector<std::string>& labels() const { return *labels_; }
  const std::string& label(std::size_t i) const { return (*labels_)[i]; }

  // Index of `label`, or size() when absent.
  std::size_t IndexOf(const std::string& label) const;

  friend bool operator==(const Codeframe& a, const Codeframe& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

// A probability distribution over a codeframe. Entries are in [0, 1] and sum
// to 1; construction goes through ValidatePrevalence.
class Prevalence {
 public:
  const Codeframe& codeframe() const { return codeframe_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const Prevalence& a, const Prevalence& b) {
    return a.codeframe_ == b.codeframe_ && a.values_ == b.values_;
  }

 private:
  friend Prevalence ValidatePrevalence(const Codeframe&, std::span<const double>);
  friend Prevalence MakePrevalenceUnchecked(const Codeframe&, std::vector<double>);

  Prevalence(Codeframe codeframe, std::vector<double> values)
      : codeframe_(std::move(codeframe)), values_(std::move(values)) {}

  Codeframe codeframe_;
  std::vector<double> values_;
};

// Checks dimensions, signs and normalization (|sum - 1| <= kSumTolerance),
// then divides by the sum so downstream code sees an exactly normalized
// vector. Throws Error with kDimensionMismatch, kNegativeEntry or
// kNotNormalized.
Prevalence ValidatePrevalence(const Codeframe& codeframe,
                              std::span<const double> values);

// Builds a prevalence from counts by normalizing; the counts must be
// non-negative with a positive total.
Prevalence PrevalenceFromCounts(const Codeframe& codeframe,
                                std::span<const double> counts);

// For internal producers whose output is normalized by construction.
Prevalence MakePrevalenceUnchecked(const Codeframe& codeframe,
                                   std::vector<double> values);

// The additive smoothing constant. Either given directly or derived from a
// sample size as 1 / (2 * sample_size).
class SmoothingConfig {
 public:
  SmoothingConfig() = default;

  static SmoothingConfig None() { return SmoothingConfig(); }
  static SmoothingConfig FromEpsilon(double epsilon);
  static SmoothingConfig FromSampleSize(std::uint64_t sample_size);

  double epsilon() const { return epsilon_; }
  // Present only when derived from a sample size.
  std::uint64_t sample_size() const { return sample_size_; }
  bool enabled() const { return epsilon_ > 0.0; }

  friend bool operator==(const SmoothingConfig&, const SmoothingConfig&) = default;

 private:
  double epsilon_ = 0.0;
  std::uint64_t sample_size_ = 0;
};

// p_s(c) = (eps + p(c)) / (eps * |C| + sum p). Identity when eps == 0.
Prevalence Smooth(const Prevalence& p, const SmoothingConfig& config);

// Writes the smoothed version of `values` into `out` (same length).
void SmoothInto(std::span<const double> values, double epsilon,
                std::span<double> out);

// Renormalizes `p` onto the classes named in `labels` (kept in codeframe
// order). Throws kZeroMass when the selected classes carry no mass,
// kUnknownLabel for a label outside the codeframe and kInvalidCodeframe when
// fewer than two distinct labels are selected.
Prevalence Project(const Prevalence& p, const std::vector<std::string>& labels);

// Same as Project but selecting classes by index.
Prevalence ProjectIndices(const Prevalence& p,
                          const std::vector<std::size_t>& indices);

// Index of the least prevalent class; ties go to the lowest index.
std::size_t LeastPrevalentClass(std::span<const double> values);

// Point mass on the least prevalent class of `p`.
Prevalence PerverseEstimator(const Prevalence& p);

}  // namespace emq

#endif  // EMQ_DISTRIBUTIONS_HPP_
