// Copyright 2026 The AmineScreen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/error.hpp"

#include <fmt/format.h>

namespace amine {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kUnbalancedBranch: return "UnbalancedBranch";
    case ErrorCode::kUnclosedRingBond: return "UnclosedRingBond";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kValenceViolation: return "ValenceViolation";
    case ErrorCode::kSyntax: return "Syntax";
    case ErrorCode::kMultiComponent: return "MultiComponent";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSingleClassTraining: return "SingleClassTraining";
    case ErrorCode::kNonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::kNoAmine: return "NoAmine";
    case ErrorCode::kZeroReference: return "ZeroReference";
    case ErrorCode::kAbsorbanceExceedsA: return "AbsorbanceExceedsA";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

ParseError::ParseError(ErrorCode code, std::size_t position,
                       const std::string& what)
    : Error(code, fmt::format("{} at position {}: {}", error_code_name(code),
                              position, what)),
      position_(position) {}

}  // namespace amine
