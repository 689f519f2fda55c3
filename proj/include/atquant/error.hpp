// Copyright 2026 The atquant Authors
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

#ifndef ATQUANT_ERROR_HPP_
#define ATQUANT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace atquant {

enum class ErrorCode {
  // Tree construction.
  kCyclicStructure,
  kMultipleRoots,
  kNoRoot,
  kDisconnectedNode,
  kBasWithChildren,
  kGateWithoutChildren,
  kDanglingReference,
  kDuplicateLabel,
  kUnknownNode,
  // Domains and values.
  kUnknownDomain,
  kEmptyProduct,
  kValueKindMismatch,
  // Analyses.
  kDynamicTreeRejected,
  kDagRejected,
  kNotSemiring,
  kNotSemiringDynamic,
  kMissingNeutrals,
  kIllFormed,
  kBudgetExceeded,
  kOrderMismatch,
  kUnsupportedDomainForKTop,
  kNotProbability,
  kIncompatibleDomain,
  kIncompleteAttribution,
  kEmptySuite,
  // Model files.
  kSyntaxError,
  kDuplicateDefinition,
};

std::string_view ToString(ErrorCode code);

/// Every failure raised by the library. `code()` is stable and suitable for
/// dispatch; `what()` is a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) +
                        ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace atquant

#endif  // ATQUANT_ERROR_HPP_
