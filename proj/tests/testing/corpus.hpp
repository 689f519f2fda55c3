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

#ifndef ATQUANT_TESTS_TESTING_CORPUS_HPP_
#define ATQUANT_TESTS_TESTING_CORPUS_HPP_

#include <initializer_list>
#include <string>
#include <string_view>

#include "atquant/analysis.hpp"
#include "atquant/model_io.hpp"
#include "atquant/semantics.hpp"

namespace atquant::testing {

/// Loads models/<name>.at.
ModelDocument Corpus(std::string_view name);

/// Typed attribution `attribution` of `doc` under the built-in `domain`.
Attribution Typed(const ModelDocument& doc, std::string_view attribution,
                  const AttributeDomain& domain);

Attack AttackOf(const AttackTree& tree,
                std::initializer_list<std::string_view> labels);

OrderPair Before(const AttackTree& tree, std::string_view x,
                 std::string_view y);

AttackTree TreeFromText(std::string_view text);

}  // namespace atquant::testing

#endif  // ATQUANT_TESTS_TESTING_CORPUS_HPP_
