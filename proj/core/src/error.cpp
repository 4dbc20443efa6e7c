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

#include "emq/error.hpp"

namespace emq {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidCodeframe: return "InvalidCodeframe";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidSmoothing: return "InvalidSmoothing";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kNotBinary: return "NotBinary";
    case ErrorCode::kUnsupportedMeasure: return "UnsupportedMeasure";
    case ErrorCode::kUndefinedValue: return "UndefinedValue";
    case ErrorCode::kIncompatiblePair: return "IncompatiblePair";
    case ErrorCode::kNoFixedScenario: return "NoFixedScenario";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMixedCodeframes: return "MixedCodeframes";
    case ErrorCode::kDuplicateSample: return "DuplicateSample";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace emq
