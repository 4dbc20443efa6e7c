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

#ifndef EMQ_ERROR_HPP_
#define EMQ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace emq {

enum class ErrorCode {
  kInvalidCodeframe,
  kNegativeEntry,
  kNotNormalized,
  kDimensionMismatch,
  kInvalidSmoothing,
  kZeroMass,
  kUnknownLabel,
  kNotBinary,
  kUnsupportedMeasure,
  kUndefinedValue,
  kIncompatiblePair,
  kNoFixedScenario,
  kDomainError,
  kInvalidScenario,
  kEmptyInput,
  kMixedCodeframes,
  kDuplicateSample,
  kParseError,
  kInvalidArgument,
};

// Stable identifier used in diagnostics, e.g. "NotNormalized".
std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace emq

#endif  // EMQ_ERROR_HPP_
