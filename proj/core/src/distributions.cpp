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

#include "emq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "emq/error.hpp"

namespace emq {
namespace {

std::string FormatValues(std::span<const double> values) {
  std::ostringstream out;
  out.precision(17);
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ", ";
    out << values[i];
  }
  out << ']';
  return out.str();
}

}  // namespace

Codeframe::Codeframe(std::vector<std::string> labels) {
  if (labels.size() < 2) {
    throw Error(ErrorCode::kInvalidCodeframe,
                "a codeframe needs at least 2 classes, got " +
                    std::to_string(labels.size()));
  }
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kInvalidCodeframe,
                  "duplicate class label '" + label + "'");
    }
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

Codeframe Codeframe::Numbered(std::size_t size) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    labels.push_back("c" + std::to_string(i + 1));
  }
  return Codeframe(std::move(labels));
}

std::size_t Codeframe::IndexOf(const std::string& label) const {
  const auto it = std::find(labels_->begin(), labels_->end(), label);
  return static_cast<std::size_t>(it - labels_->begin());
}

Prevalence ValidatePrevalence(const Codeframe& codeframe,
                              std::span<const double> values) {
  if (values.size() != codeframe.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(codeframe.size()) +
                    " values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNotNormalized,
                  "non-finite entry for class '" + codeframe.label(i) + "'");
    }
    if (values[i] < 0.0) {
      throw Error(ErrorCode::kNegativeEntry,
                  "negative entry for class '" + codeframe.label(i) + "' in " +
                      FormatValues(values));
    }
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << sum << " in " << FormatValues(values);
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }
  std::vector<double> normalized(values.begin(), values.end());
  if (sum != 1.0) {
    for (double& v : normalized) v /= sum;
  }
  return Prevalence(codeframe, std::move(normalized));
}

Prevalence PrevalenceFromCounts(const Codeframe& codeframe,
                                std::span<const double> counts) {
  if (counts.size() != codeframe.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(codeframe.size()) +
                    " counts, got " + std::to_string(counts.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!std::isfinite(counts[i]) || counts[i] < 0.0) {
      throw Error(ErrorCode::kNegativeEntry,
                  "invalid count for class '" + codeframe.label(i) + "'");
    }
    total += counts[i];
  }
  if (total <= 0.0) {
    throw Error(ErrorCode::kNotNormalized, "counts sum to zero");
  }
  std::vector<double> values(counts.begin(), counts.end());
  for (double& v : values) v /= total;
  return ValidatePrevalence(codeframe, values);
}

Prevalence MakePrevalenceUnchecked(const Codeframe& codeframe,
                                   std::vector<double> values) {
  return Prevalence(codeframe, std::move(values));
}

SmoothingConfig SmoothingConfig::FromEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidSmoothing,
                "epsilon must be a finite non-negative number");
  }
  SmoothingConfig config;
  config.epsilon_ = epsilon;
  return config;
}

SmoothingConfig SmoothingConfig::FromSampleSize(std::uint64_t sample_size) {
  if (sample_size < 1) {
    throw Error(ErrorCode::kInvalidSmoothing, "sample size must be >= 1");
  }
  SmoothingConfig config;
  config.epsilon_ = 1.0 / (2.0 * static_cast<double>(sample_size));
  config.sample_size_ = sample_size;
  return config;
}

void SmoothInto(std::span<const double> values, double epsilon,
                std::span<double> out) {
  if (epsilon == 0.0) {
    std::copy(values.begin(), values.end(), out.begin());
    return;
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  const double denominator =
      epsilon * static_cast<double>(values.size()) + sum;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = (epsilon + values[i]) / denominator;
  }
}

Prevalence Smooth(const Prevalence& p, const SmoothingConfig& config) {
  if (!config.enabled()) return p;
  std::vector<double> out(p.size());
  SmoothInto(p.values(), config.epsilon(), out);
  return MakePrevalenceUnchecked(p.codeframe(), std::move(out));
}

Prevalence ProjectIndices(const Prevalence& p,
                          const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != indices.size()) {
    throw Error(ErrorCode::kInvalidCodeframe, "repeated class in projection");
  }
  std::vector<std::string> labels;
  std::vector<double> values;
  double mass = 0.0;
  for (std::size_t i : sorted) {
    if (i >= p.size()) {
      throw Error(ErrorCode::kUnknownLabel,
                  "class index " + std::to_string(i) + " out of range");
    }
    labels.push_back(p.codeframe().label(i));
    values.push_back(p[i]);
    mass += p[i];
  }
  if (sorted.size() == p.size()) return p;
  Codeframe sub(std::move(labels));
  if (mass <= 0.0) {
    throw Error(ErrorCode::kZeroMass,
                "projection onto classes with zero total prevalence");
  }
  for (double& v : values) v /= mass;
  return MakePrevalenceUnchecked(sub, std::move(values));
}

Prevalence Project(const Prevalence& p,
                   const std::vector<std::string>& labels) {
  std::vector<std::size_t> indices;
  indices.reserve(labels.size());
  for (const auto& label : labels) {
    const std::size_t i = p.codeframe().IndexOf(label);
    if (i == p.size()) {
      throw Error(ErrorCode::kUnknownLabel, "unknown class '" + label + "'");
    }
    indices.push_back(i);
  }
  return ProjectIndices(p, indices);
}

std::size_t LeastPrevalentClass(std::span<const double> values) {
  return static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
}

Prevalence PerverseEstimator(const Prevalence& p) {
  std::vector<double> out(p.size(), 0.0);
  out[LeastPrevalentClass(p.values())] = 1.0;
  return MakePrevalenceUnchecked(p.codeframe(), std::move(out));
}

}  // namespace emq
