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

#ifndef ATQUANT_ATTACK_TREE_HPP_
#define ATQUANT_ATTACK_TREE_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atquant {

/// Index of a node in an AttackTree's contiguous node store.
enum class NodeId : std::uint32_t {};

inline constexpr std::uint32_t Index(NodeId id) {
  return static_cast<std::uint32_t>(id);
}

enum class NodeType { kBas, kOr, kAnd, kSand };

std::string_view ToString(NodeType type);
std::optional<NodeType> NodeTypeFromString(std::string_view text);

enum class Shape { kTree, kDag };
enum class Dynamics { kStatic, kDynamic };

struct StructureKind {
  Shape shape = Shape::kTree;
  Dynamics dynamics = Dynamics::kStatic;

  friend bool operator==(const StructureKind&, const StructureKind&) = default;
};

/// Input record for AttackTree::Build. Children are referenced by label.
struct NodeSpec {
  std::string label;
  NodeType type = NodeType::kBas;
  std::vector<std::string> children;
};

struct Node {
  std::string label;
  NodeType type = NodeType::kBas;
  std::vector<NodeId> children;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Rooted DAG of BAS leaves and OR/AND/SAND gates with ordered children.
///
/// Instances are immutable once built and always satisfy the structural
/// invariants: acyclic, connected, the root is the only parentless node,
/// and a node has children iff it is not a BAS. A gate may list the same
/// child twice (e.g. SAND(a,b,a)); well-formedness is checked elsewhere.
class AttackTree {
 public:
  /// Validates and assembles a tree. Node ids follow the order of `nodes`.
  /// Throws Error with the specific structural violation.
  static AttackTree Build(const std::vector<NodeSpec>& nodes,
                          std::string_view root_label);

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(Index(id)); }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::optional<NodeId> Find(std::string_view label) const;
  /// Like Find but throws Error(kUnknownNode).
  NodeId Lookup(std::string_view label) const;
  const std::string& label(NodeId id) const { return node(id).label; }
  NodeType type(NodeId id) const { return node(id).type; }
  bool IsBas(NodeId id) const { return type(id) == NodeType::kBas; }

  friend bool operator==(const AttackTree& a, const AttackTree& b) {
    return a.root_ == b.root_ && a.nodes_ == b.nodes_;
  }

 private:
  AttackTree(std::vector<Node> nodes, NodeId root);
  friend AttackTree StaticProjection(const AttackTree& tree);

  std::vector<Node> nodes_;
  NodeId root_{};
  std::unordered_map<std::string, NodeId> by_label_;
};

StructureKind Classify(const AttackTree& tree);

/// BAS in depth-first, leftmost, first-occurrence order from the root.
std::vector<NodeId> BasOf(const AttackTree& tree);

/// BAS descendants of `v`; {v} when v is a BAS.
std::set<NodeId> Descendants(const AttackTree& tree, NodeId v);

/// Same tree with every SAND gate retyped to AND.
AttackTree StaticProjection(const AttackTree& tree);

/// Node ids such that every node appears after all of its children.
std::vector<NodeId> PostOrder(const AttackTree& tree);

}  // namespace atquant

#endif  // ATQUANT_ATTACK_TREE_HPP_
