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

#ifndef ATQUANT_BDD_HPP_
#define ATQUANT_BDD_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "atquant/attack_tree.hpp"
#include "atquant/semantics.hpp"

namespace atquant {

/// Reference to a node of a BddManager. 0 and 1 are the terminals.
using BddRef = std::uint32_t;
inline constexpr BddRef kBddFalse = 0;
inline constexpr BddRef kBddTrue = 1;

inline constexpr bool IsTerminal(BddRef r) { return r < 2; }

/// Total order over the BAS of a tree; rank 0 is tested first.
class VarOrder {
 public:
  /// Throws kOrderMismatch on repeated variables.
  explicit VarOrder(std::vector<NodeId> sequence);

  std::size_t size() const { return sequence_.size(); }
  NodeId at(std::size_t rank) const { return sequence_.at(rank); }
  std::optional<std::size_t> RankOf(NodeId v) const;
  const std::vector<NodeId>& sequence() const { return sequence_; }

  friend bool operator==(const VarOrder& a, const VarOrder& b) {
    return a.sequence_ == b.sequence_;
  }

 private:
  std::vector<NodeId> sequence_;
  std::unordered_map<std::uint32_t, std::size_t> rank_;
};

/// Depth-first, leftmost, first-occurrence order of the BAS.
VarOrder DefaultOrder(const AttackTree& tree);

/// A BDD session: node store, unique table, and operation caches.
/// Not thread-safe; completed Bdds may be read concurrently.
class BddManager {
 public:
  struct NodeData {
    std::uint32_t level;
    BddRef low;
    BddRef high;
  };

  explicit BddManager(VarOrder order);

  const VarOrder& order() const { return order_; }

  /// Level of a node; terminals sit below every variable.
  std::uint32_t Level(BddRef r) const {
    return IsTerminal(r) ? terminal_level() : nodes_[r].level;
  }
  std::uint32_t terminal_level() const {
    return static_cast<std::uint32_t>(order_.size());
  }
  const NodeData& node(BddRef r) const { return nodes_.at(r); }
  /// Nodes ever created in this session, terminals included.
  std::size_t store_size() const { return nodes_.size(); }

  /// Reduced node: returns `low` when low == high, reuses an existing
  /// (level, low, high) triple otherwise.
  BddRef MakeNode(std::uint32_t level, BddRef low, BddRef high);
  BddRef Variable(std::uint32_t level);

  BddRef And(BddRef a, BddRef b);
  BddRef Or(BddRef a, BddRef b);
  BddRef Not(BddRef a);

  /// Minimal solutions of a monotone function: the ⊤-paths of the result,
  /// read as the variables taken on high edges, are exactly its
  /// subset-minimal satisfying sets. In that reading a node whose high
  /// child is ⊥ adds nothing, so such nodes are never built.
  BddRef Minimise(BddRef f);

  /// Products of `f` that contain no product of `g` (both in minimal-solution
  /// form).
  BddRef Without(BddRef f, BddRef g);

 private:
  enum class Op : std::uint8_t { kAnd, kOr, kNot, kMinimise, kWithout };

  /// MakeNode for product sets: `low` when `high` is ⊥.
  BddRef MakeProductNode(std::uint32_t level, BddRef low, BddRef high);

  struct Key {
    std::uint64_t a;
    std::uint64_t b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.a * 0x9E3779B97F4A7C15ULL ^ k.b);
    }
  };

  static Key CacheKey(Op op, BddRef a, BddRef b) {
    return {(std::uint64_t(op) << 32) | a, b};
  }
  BddRef Apply(Op op, BddRef a, BddRef b);

  VarOrder order_;
  std::vector<NodeData> nodes_;
  std::unordered_map<Key, BddRef, KeyHash> unique_;
  std::unordered_map<Key, BddRef, KeyHash> cache_;
};

/// A root in a BddManager session.
class Bdd {
 public:
  Bdd(std::shared_ptr<BddManager> session, BddRef root)
      : session_(std::move(session)), root_(root) {}

  BddRef root() const { return root_; }
  const BddManager& manager() const { return *session_; }
  const std::shared_ptr<BddManager>& session() const { return session_; }
  const VarOrder& order() const { return session_->order(); }

  /// BAS tested at a nonterminal node.
  NodeId Label(BddRef r) const {
    return order().at(session_->node(r).level);
  }

  /// Nodes reachable from the root in depth-first pre-order (low first),
  /// terminals included.
  std::vector<BddRef> Reachable() const;
  std::size_t NodeCount() const { return Reachable().size(); }
  std::size_t NonterminalCount() const;

  /// Follows the path selected by `attack` (BAS in the attack are ⊤).
  bool Evaluate(const Attack& attack) const;

  /// Same session and same root: equal functions under canonicity.
  friend bool operator==(const Bdd& a, const Bdd& b) {
    return a.session_ == b.session_ && a.root_ == b.root_;
  }

 private:
  std::shared_ptr<BddManager> session_;
  BddRef root_;
};

/// BDD of the structure function. Throws kDynamicTreeRejected, or
/// kOrderMismatch when `order` is not a permutation of the tree's BAS.
Bdd FromStructureFunction(const AttackTree& tree, const VarOrder& order);
/// As above inside an existing session (its order is used).
Bdd FromStructureFunction(const AttackTree& tree,
                          std::shared_ptr<BddManager> session);

/// Minimal-solution BDD in the same session.
Bdd Minimise(const Bdd& bdd);

/// One attack per root-to-⊤ path: the variables taken via high edges.
AttackSuite TopPaths(const Bdd& bdd);

struct BddValidation {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Checks ordering, reduction (low != high), uniqueness of
/// (label, low, high), and that nothing points back at the root.
BddValidation Validate(const Bdd& bdd);

/// ⊤ is never a low child and ⊥ is never a high child.
bool HasMinimalShape(const Bdd& bdd);

}  // namespace atquant

#endif  // ATQUANT_BDD_HPP_
