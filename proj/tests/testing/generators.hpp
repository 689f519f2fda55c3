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

#ifndef ATQUANT_TESTS_TESTING_GENERATORS_HPP_
#define ATQUANT_TESTS_TESTING_GENERATORS_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "atquant/attack_tree.hpp"
#include "atquant/bdd.hpp"
#include "atquant/domains.hpp"
#include "atquant/values.hpp"

namespace atquant::testing {

struct TreeShape {
  std::size_t min_bas = 1;
  std::size_t max_bas = 8;
  std::size_t max_children = 3;
  /// Chance that a new gate also takes an already-used node as a child.
  double share = 0.0;
  /// Chance that a new gate is a SAND gate.
  double sand = 0.0;
};

/// Random tree built bottom-up by grouping unparented nodes under gates.
/// With share = 0 the result is tree-structured.
AttackTree RandomTree(std::mt19937_64& rng, const TreeShape& shape);

/// Random DAG that actually shares a node (resampled until it does).
AttackTree RandomDag(std::mt19937_64& rng, const TreeShape& shape);

/// Random dynamic tree whose ordering graph is acyclic.
AttackTree RandomWellFormed(std::mt19937_64& rng, const TreeShape& shape);

MetricValue RandomValue(std::mt19937_64& rng, const AttributeDomain& domain);

Attribution RandomAttribution(std::mt19937_64& rng, const AttackTree& tree,
                              const AttributeDomain& domain);

VarOrder RandomOrder(std::mt19937_64& rng, const AttackTree& tree);

std::vector<Triple> RandomTriples(std::mt19937_64& rng,
                                  const AttributeDomain& domain,
                                  std::size_t count);

}  // namespace atquant::testing

#endif  // ATQUANT_TESTS_TESTING_GENERATORS_HPP_
