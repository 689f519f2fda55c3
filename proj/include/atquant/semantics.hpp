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

#ifndef ATQUANT_SEMANTICS_HPP_
#define ATQUANT_SEMANTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "atquant/attack_tree.hpp"
#include "atquant/domains.hpp"
#include "atquant/values.hpp"

// Definitional semantics of attack trees, computed by exhaustive enumeration.
// Everything here is exponential in the number of BAS and serves as the
// reference against which the efficient algorithms are checked, and as the
// only available method for DAG-structured dynamic trees.

namespace atquant {

using Attack = std::set<NodeId>;
using AttackSuite = std::set<Attack>;
using OrderPair = std::pair<NodeId, NodeId>;
using Order = std::set<OrderPair>;

inline constexpr std::size_t kDefaultOracleBudget = 20;

struct OracleOptions {
  /// Largest BAS count the enumeration accepts.
  std::size_t budget = kDefaultOracleBudget;
};

/// s_T(v, A) for static trees. Throws kDynamicTreeRejected on SAND gates.
bool StructureFunction(const AttackTree& tree, NodeId v, const Attack& attack);

/// Subset-minimal successful attacks of a static tree.
AttackSuite MinimalAttacksStatic(const AttackTree& tree,
                                 const OracleOptions& options = {});

struct OrderingGraph {
  std::vector<NodeId> vertices;
  Order edges;
  /// Pair insertions performed while building, duplicates included.
  std::size_t insertions = 0;
};

OrderingGraph BuildOrderingGraph(const AttackTree& tree);

struct WellFormedness {
  bool well_formed = true;
  /// Closed walk a ⊲ ... ⊲ a (first == last) when ill-formed.
  std::vector<NodeId> cycle;
};

WellFormedness CheckWellFormed(const AttackTree& tree);

/// Attack with its execution order, stored as a transitive reduction.
struct PosetAttack {
  Attack attack;
  Order order;

  friend bool operator==(const PosetAttack&, const PosetAttack&) = default;
  friend auto operator<=>(const PosetAttack&, const PosetAttack&) = default;
};

/// Minimal attacks of the static projection, each ordered by the ordering
/// graph restricted to it. Throws kIllFormed.
std::set<PosetAttack> MinimalAttacksDynamic(const AttackTree& tree,
                                            const OracleOptions& options = {});

struct HasseDiagram {
  Attack nodes;
  Order edges;
  /// Undirected connected components; each sorted, ordered by first node.
  std::vector<std::vector<NodeId>> components;
};

HasseDiagram Hasse(const PosetAttack& poset);

/// Transitive reduction of an acyclic relation over `nodes`.
Order TransitiveReduction(const Attack& nodes, const Order& relation);

/// ▽ over minimal attacks of △ over their BAS. Any domain; no semiring
/// requirement.
MetricValue OracleMetricStatic(const AttackTree& tree,
                               const Attribution& attribution,
                               const AttributeDomain& domain,
                               const OracleOptions& options = {});

/// ▽ over poset attacks of △ over Hasse components of ▷ over component BAS.
/// Works for tree and DAG structure.
MetricValue OracleMetricDynamic(const AttackTree& tree,
                                const Attribution& attribution,
                                const DynamicAttributeDomain& domain,
                                const OracleOptions& options = {});

/// Whether an attack executed under `order` succeeds: the attack satisfies
/// the static projection and `order` never runs a BAS before one that the
/// ordering graph requires to precede it.
bool PosetSucceeds(const AttackTree& tree, const Attack& attack,
                   const Order& order);

enum class CoherenceMode {
  /// Supersets carry the ordering graph restricted to them.
  kRestrictOrder,
  /// Supersets carry a random linear order (test mode; not coherent).
  kArbitraryOrder,
};

struct CoherenceViolation {
  Attack base;
  Attack superset;
  Order order;
};

struct CoherenceReport {
  std::size_t trials = 0;
  std::vector<CoherenceViolation> violations;
};

/// Samples successful attacks and random supersets of them, and verifies
/// the supersets still succeed. Throws kIllFormed.
CoherenceReport CheckCoherence(const AttackTree& tree, std::size_t trials,
                               std::uint64_t seed,
                               CoherenceMode mode = CoherenceMode::kRestrictOrder,
                               const OracleOptions& options = {});

/// Validates that `attribution` covers every BAS with values of the domain's
/// kind. Throws kIncompleteAttribution or kIncompatibleDomain.
void RequireCompatible(const AttackTree& tree, const Attribution& attribution,
                       const AttributeDomain& domain);

}  // namespace atquant

#endif  // ATQUANT_SEMANTICS_HPP_
