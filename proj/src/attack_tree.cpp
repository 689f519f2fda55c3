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

#include "atquant/attack_tree.hpp"

#include <algorithm>
#include <utility>

#include "atquant/error.hpp"

namespace atquant {

std::string_view ToString(NodeType type) {
  switch (type) {
    case NodeType::kBas: return "bas";
    case NodeType::kOr: return "or";
    case NodeType::kAnd: return "and";
    case NodeType::kSand: return "sand";
  }
  return "?";
}

std::optional<NodeType> NodeTypeFromString(std::string_view text) {
  if (text == "bas") return NodeType::kBas;
  if (text == "or") return NodeType::kOr;
  if (text == "and") return NodeType::kAnd;
  if (text == "sand") return NodeType::kSand;
  return std::nullopt;
}

AttackTree::AttackTree(std::vector<Node> nodes, NodeId root)
    : nodes_(std::move(nodes)), root_(root) {
  by_label_.reserve(nodes_.size());
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    by_label_.emplace(nodes_[i].label, NodeId{i});
  }
}

AttackTree AttackTree::Build(const std::vector<NodeSpec>& specs,
                             std::string_view root_label) {
  std::unordered_map<std::string, NodeId> ids;
  ids.reserve(specs.size());
  for (std::uint32_t i = 0; i < specs.size(); ++i) {
    if (!ids.emplace(specs[i].label, NodeId{i}).second) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "duplicate node label '" + specs[i].label + "'");
    }
  }

  std::vector<Node> nodes;
  nodes.reserve(specs.size());
  for (const NodeSpec& spec : specs) {
    Node node{spec.label, spec.type, {}};
    node.children.reserve(spec.children.size());
    for (const std::string& child : spec.children) {
      auto it = ids.find(child);
      if (it == ids.end()) {
        throw Error(ErrorCode::kDanglingReference,
                    "node '" + spec.label + "' references undefined node '" +
                        child + "'");
      }
      node.children.push_back(it->second);
    }
    if (spec.type == NodeType::kBas && !node.children.empty()) {
      throw Error(ErrorCode::kBasWithChildren,
                  "basic attack step '" + spec.label + "' has children");
    }
    if (spec.type != NodeType::kBas && node.children.empty()) {
      throw Error(ErrorCode::kGateWithoutChildren,
                  "gate '" + spec.label + "' has no children");
    }
    nodes.push_back(std::move(node));
  }

  auto root_it = ids.find(std::string(root_label));
  if (root_it == ids.end()) {
    throw Error(ErrorCode::kNoRoot,
                "root '" + std::string(root_label) + "' is not defined");
  }
  const NodeId root = root_it->second;

  // Reachability from the root; unreachable parts are either extra roots
  // or detached cycles.
  std::vector<bool> reached(nodes.size(), false);
  std::vector<NodeId> stack{root};
  reached[Index(root)] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : nodes[Index(v)].children) {
      if (!reached[Index(c)]) {
        reached[Index(c)] = true;
        stack.push_back(c);
      }
    }
  }
  std::vector<int> parents(nodes.size(), 0);
  for (const Node& node : nodes) {
    for (NodeId c : node.children) ++parents[Index(c)];
  }
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (reached[i]) continue;
    if (parents[i] == 0) {
      throw Error(ErrorCode::kMultipleRoots,
                  "node '" + nodes[i].label + "' has no parent but is not '" +
                      std::string(root_label) + "'");
    }
  }
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (!reached[i]) {
      throw Error(ErrorCode::kDisconnectedNode,
                  "node '" + nodes[i].label + "' is not reachable from '" +
                      std::string(root_label) + "'");
    }
  }

  // Iterative three-colour DFS for cycles.
  enum Colour : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<Colour> colour(nodes.size(), kWhite);
  std::vector<std::pair<NodeId, std::size_t>> frames{{root, 0}};
  colour[Index(root)] = kGrey;
  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    const auto& children = nodes[Index(v)].children;
    if (next == children.size()) {
      colour[Index(v)] = kBlack;
      frames.pop_back();
      continue;
    }
    NodeId c = children[next++];
    if (colour[Index(c)] == kGrey) {
      throw Error(ErrorCode::kCyclicStructure,
                  "cycle through node '" + nodes[Index(c)].label + "'");
    }
    if (colour[Index(c)] == kWhite) {
      colour[Index(c)] = kGrey;
      frames.emplace_back(c, 0);
    }
  }
  if (parents[Index(root)] != 0) {
    throw Error(ErrorCode::kCyclicStructure,
                "root '" + std::string(root_label) + "' has a parent");
  }

  return AttackTree(std::move(nodes), root);
}

std::optional<NodeId> AttackTree::Find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

NodeId AttackTree::Lookup(std::string_view label) const {
  if (auto id = Find(label)) return *id;
  throw Error(ErrorCode::kUnknownNode,
              "unknown node '" + std::string(label) + "'");
}

StructureKind Classify(const AttackTree& tree) {
  StructureKind kind;
  std::vector<int> in_degree(tree.size(), 0);
  for (const Node& node : tree.nodes()) {
    if (node.type == NodeType::kSand) kind.dynamics = Dynamics::kDynamic;
    for (NodeId c : node.children) {
      if (++in_degree[Index(c)] > 1) kind.shape = Shape::kDag;
    }
  }
  return kind;
}

std::vector<NodeId> BasOf(const AttackTree& tree) {
  std::vector<NodeId> out;
  std::vector<bool> seen(tree.size(), false);
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (seen[Index(v)]) continue;
    seen[Index(v)] = true;
    const Node& node = tree.node(v);
    if (node.type == NodeType::kBas) {
      out.push_back(v);
      continue;
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
      if (!seen[Index(*it)]) stack.push_back(*it);
    }
  }
  return out;
}

std::set<NodeId> Descendants(const AttackTree& tree, NodeId v) {
  if (Index(v) >= tree.size()) {
    throw Error(ErrorCode::kUnknownNode,
                "unknown node id " + std::to_string(Index(v)));
  }
  std::set<NodeId> out;
  std::vector<bool> seen(tree.size(), false);
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (seen[Index(u)]) continue;
    seen[Index(u)] = true;
    if (tree.IsBas(u)) {
      out.insert(u);
    } else {
      for (NodeId c : tree.node(u).children) stack.push_back(c);
    }
  }
  return out;
}

AttackTree StaticProjection(const AttackTree& tree) {
  std::vector<Node> nodes = tree.nodes();
  for (Node& node : nodes) {
    if (node.type == NodeType::kSand) node.type = NodeType::kAnd;
  }
  return AttackTree(std::move(nodes), tree.root());
}

std::vector<NodeId> PostOrder(const AttackTree& tree) {
  std::vector<NodeId> order;
  order.reserve(tree.size());
  std::vector<bool> done(tree.size(), false);
  std::vector<std::pair<NodeId, std::size_t>> frames{{tree.root(), 0}};
  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    const auto& children = tree.node(v).children;
    if (next == children.size()) {
      done[Index(v)] = true;
      order.push_back(v);
      frames.pop_back();
      continue;
    }
    NodeId c = children[next++];
    if (!done[Index(c)]) frames.emplace_back(c, 0);
  }
  return order;
}

}  // namespace atquant
