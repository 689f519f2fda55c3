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

#include "atquant/error.hpp"

namespace atquant {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCyclicStructure: return "CyclicStructure";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kNoRoot: return "NoRoot";
    case ErrorCode::kDisconnectedNode: return "DisconnectedNode";
    case ErrorCode::kBasWithChildren: return "BasWithChildren";
    case ErrorCode::kGateWithoutChildren: return "GateWithoutChildren";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUnknownDomain: return "UnknownDomain";
    case ErrorCode::kEmptyProduct: return "EmptyProduct";
    case ErrorCode::kValueKindMismatch: return "ValueKindMismatch";
    case ErrorCode::kDynamicTreeRejected: return "DynamicTreeRejected";
    case ErrorCode::kDagRejected: return "DagRejected";
    case ErrorCode::kNotSemiring: return "NotSemiring";
    case ErrorCode::kNotSemiringDynamic: return "NotSemiringDynamic";
    case ErrorCode::kMissingNeutrals: return "MissingNeutrals";
    case ErrorCode::kIllFormed: return "IllFormed";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kUnsupportedDomainForKTop: return "UnsupportedDomainForKTop";
    case ErrorCode::kNotProbability: return "NotProbability";
    case ErrorCode::kIncompatibleDomain: return "IncompatibleDomain";
    case ErrorCode::kIncompleteAttribution: return "IncompleteAttribution";
    case ErrorCode::kEmptySuite: return "EmptySuite";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateDefinition: return "DuplicateDefinition";
  }
  return "Unknown";
}

}  // namespace atquant
