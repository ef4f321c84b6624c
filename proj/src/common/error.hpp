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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amine {

// Every failure the core can raise. The C API maps these onto status codes,
// so keep the numbering stable.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo,
  // SMILES parsing
  kUnbalancedBranch,
  kUnclosedRingBond,
  kUnknownElement,
  kValenceViolation,
  kSyntax,
  kMultiComponent,
  // data / numerics
  kEmptyInput,
  kDegenerateData,
  kDimensionMismatch,
  kLengthMismatch,
  kSingleClassTraining,
  kNonFiniteFeature,
  kNoAmine,
  kZeroReference,
  kAbsorbanceExceedsA,
  kNonConvergence,
  kFormat,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors tied to a character offset in a SMILES string.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& what);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace amine
