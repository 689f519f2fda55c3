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

#ifndef ATQUANT_ANALYSIS_HPP_
#define ATQUANT_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atquant/attack_tree.hpp"
#include "atquant/bdd.hpp"
#include "atquant/domains.hpp"
#include "atquant/semantics.hpp"
#include "atquant/values.hpp"

namespace atquant {

/// Bottom-up fold for tree-structured static trees: OR folds ▽, AND folds △.
/// Throws kDagRejected, kDynamicTreeRejected, kNotSemiring.
MetricValue BuSat(const AttackTree& tree, NodeId v,
                  const Attribution& attribution,
                  const AttributeDomain& domain);

/// Bottom-up fold for tree-structured dynamic trees; SAND folds ▷.
/// Throws kDagRejected, kIllFormed, kNotSemiringDynamic.
MetricValue BuDat(const AttackTree& tree, NodeId v,
                  const Attribution& attribution,
                  const DynamicAttributeDomain& domain);

/// The raw bottom-up fold with no structural checks. On DAGs shared
/// subtrees are counted once per parent, which is wrong in general; kept as
/// a negative control and never chosen by Analyze.
MetricValue BottomUpUnchecked(const AttackTree& tree,
                              const Attribution& attribution,
                              const DynamicAttributeDomain& domain);

struct BuBddStats {
  std::size_t visited_nodes = 0;
};

/// Metric from a minimised BDD: ⊥ ↦ 1▽, ⊤ ↦ 1△, and
/// w ↦ bu(low) ▽ (bu(high) △ α(w)). Each node is evaluated once.
/// Throws kMissingNeutrals, kNotSemiring.
MetricValue BuBdd(const Bdd& bdd, BddRef w, const Attribution& attribution,
                  const AttributeDomain& domain, BuBddStats* stats = nullptr);
MetricValue BuBdd(const Bdd& bdd, const Attribution& attribution,
                  const AttributeDomain& domain, BuBddStats* stats = nullptr);

/// Extended integer with sign, used as k-shortest-path edge weight.
struct SignedWeight {
  std::int64_t value = 0;
  /// -1, 0, +1: negative infinity, finite, positive infinity.
  int infinity = 0;

  friend SignedWeight operator+(SignedWeight a, SignedWeight b);
  friend bool operator==(const SignedWeight&, const SignedWeight&) = default;
  friend bool operator<(const SignedWeight& a, const SignedWeight& b);
};

/// Weights of high edges: Q[w][high(w)] = sgn · α(label(w)). Low edges
/// weigh zero.
struct EdgeWeighting {
  int sign = 1;
  std::vector<std::optional<SignedWeight>> high_weight;  // indexed by BddRef
};

EdgeWeighting BuildEdgeWeighting(const Bdd& bdd, const Attribution& attribution,
                                 const AttributeDomain& domain);

struct RankedAttack {
  MetricValue value;
  Attack attack;
};

/// The k best attacks (values and witnesses), best first, via k-shortest
/// paths from the root to ⊤. Fewer than k are returned only if the BDD has
/// fewer ⊤-paths. Throws kUnsupportedDomainForKTop.
std::vector<RankedAttack> KTop(const Bdd& bdd, std::size_t k,
                               const Attribution& attribution,
                               const AttributeDomain& domain);

/// Probability that the attacker succeeds when each BAS happens
/// independently with its attribute probability. Tree-structured static
/// trees only. Throws kDagRejected, kDynamicTreeRejected, kNotProbability.
Probability TotalProbabilityTree(const AttackTree& tree,
                                 const Attribution& attribution);

enum class Algorithm { kAuto, kBottomUp, kBdd, kOracle };

std::string_view ToString(Algorithm algorithm);
std::optional<Algorithm> AlgorithmFromString(std::string_view text);

struct AnalysisRequest {
  const AttackTree* tree = nullptr;
  const Attribution* attribution = nullptr;
  const DynamicAttributeDomain* domain = nullptr;
  Algorithm algorithm = Algorithm::kAuto;
  std::optional<std::size_t> k;
  std::optional<VarOrder> order;
  OracleOptions oracle;
};

struct AnalysisStats {
  std::size_t nodes = 0;
  std::optional<std::size_t> bdd_nodes;
  double millis = 0;
};

struct AnalysisResult {
  std::string metric;
  MetricValue value;
  /// "bu", "bu-dat", "bdd", "k-top", "oracle".
  std::string algorithm;
  std::vector<std::string> warnings;
  /// k-top only.
  std::vector<RankedAttack> ranked;
  AnalysisStats stats;
};

/// Runs the cheapest applicable algorithm (Auto) or the requested one.
/// Auto never applies a tree algorithm to a DAG; DAG-structured dynamic
/// trees fall back to the exponential oracle with a warning.
AnalysisResult Analyze(const AnalysisRequest& request);

}  // namespace atquant

#endif  // ATQUANT_ANALYSIS_HPP_
