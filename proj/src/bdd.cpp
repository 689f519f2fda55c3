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

#include "atquant/bdd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "atquant/error.hpp"

namespace atquant {

VarOrder::VarOrder(std::vector<NodeId> sequence)
    : sequence_(std::move(sequence)) {
  rank_.reserve(sequence_.size());
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (!rank_.emplace(Index(sequence_[i]), i).second) {
      throw Error(ErrorCode::kOrderMismatch,
                  "variable order lists a BAS twice");
    }
  }
}

std::optional<std::size_t> VarOrder::RankOf(NodeId v) const {
  auto it = rank_.find(Index(v));
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

VarOrder DefaultOrder(const AttackTree& tree) { return VarOrder(BasOf(tree)); }

BddManager::BddManager(VarOrder order) : order_(std::move(order)) {
  const std::uint32_t bottom = terminal_level();
  nodes_.push_back({bottom, kBddFalse, kBddFalse});
  nodes_.push_back({bottom, kBddTrue, kBddTrue});
}

BddRef BddManager::MakeNode(std::uint32_t level, BddRef low, BddRef high) {
  if (low == high) return low;
  Key key{(std::uint64_t(level) << 32) | low, high};
  auto [it, inserted] = unique_.try_emplace(key, BddRef(nodes_.size()));
  if (inserted) nodes_.push_back({level, low, high});
  return it->second;
}

BddRef BddManager::Variable(std::uint32_t level) {
  return MakeNode(level, kBddFalse, kBddTrue);
}

BddRef BddManager::And(BddRef a, BddRef b) { return Apply(Op::kAnd, a, b); }
BddRef BddManager::Or(BddRef a, BddRef b) { return Apply(Op::kOr, a, b); }

BddRef BddManager::Apply(Op op, BddRef a, BddRef b) {
  if (op == Op::kAnd) {
    if (a == kBddFalse || b == kBddFalse) return kBddFalse;
    if (a == kBddTrue) return b;
    if (b == kBddTrue || a == b) return a;
  } else {
    if (a == kBddTrue || b == kBddTrue) return kBddTrue;
    if (a == kBddFalse) return b;
    if (b == kBddFalse || a == b) return a;
  }
  if (a > b) std::swap(a, b);
  const Key key = CacheKey(op, a, b);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const std::uint32_t la = Level(a), lb = Level(b);
  const std::uint32_t top = std::min(la, lb);
  const BddRef a0 = la == top ? nodes_[a].low : a;
  const BddRef a1 = la == top ? nodes_[a].high : a;
  const BddRef b0 = lb == top ? nodes_[b].low : b;
  const BddRef b1 = lb == top ? nodes_[b].high : b;
  const BddRef low = Apply(op, a0, b0);
  const BddRef high = Apply(op, a1, b1);
  const BddRef r = MakeNode(top, low, high);
  cache_.emplace(key, r);
  return r;
}

BddRef BddManager::Not(BddRef a) {
  if (a == kBddFalse) return kBddTrue;
  if (a == kBddTrue) return kBddFalse;
  const Key key = CacheKey(Op::kNot, a, 0);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const NodeData n = nodes_[a];
  const BddRef r = MakeNode(n.level, Not(n.low), Not(n.high));
  cache_.emplace(key, r);
  return r;
}

BddRef BddManager::Minimise(BddRef f) {
  if (IsTerminal(f)) return f;
  const Key key = CacheKey(Op::kMinimise, f, 0);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const NodeData n = nodes_[f];
  const BddRef low = Minimise(n.low);
  const BddRef high = Without(Minimise(n.high), low);
  const BddRef r = MakeProductNode(n.level, low, high);
  cache_.emplace(key, r);
  return r;
}

BddRef BddManager::MakeProductNode(std::uint32_t level, BddRef low,
                                   BddRef high) {
  return high == kBddFalse ? low : MakeNode(level, low, high);
}

BddRef BddManager::Without(BddRef f, BddRef g) {
  if (g == kBddFalse) return f;
  if (f == kBddFalse || g == kBddTrue || f == g) return kBddFalse;
  if (f == kBddTrue) return kBddTrue;
  const Key key = CacheKey(Op::kWithout, f, g);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const std::uint32_t lf = Level(f), lg = Level(g);
  BddRef r;
  if (lf < lg) {
    const NodeData n = nodes_[f];
    r = MakeProductNode(lf, Without(n.low, g), Without(n.high, g));
  } else if (lf > lg) {
    // Products of g using g's top variable cannot fit inside f's.
    r = Without(f, nodes_[g].low);
  } else {
    const NodeData nf = nodes_[f];
    const NodeData ng = nodes_[g];
    r = MakeProductNode(lf, Without(nf.low, ng.low),
                        Without(Without(nf.high, ng.high), ng.low));
  }
  cache_.emplace(key, r);
  return r;
}

std::vector<BddRef> Bdd::Reachable() const {
  std::vector<BddRef> out;
  std::set<BddRef> seen;
  std::vector<BddRef> stack{root_};
  while (!stack.empty()) {
    BddRef r = stack.back();
    stack.pop_back();
    if (!seen.insert(r).second) continue;
    out.push_back(r);
    if (!IsTerminal(r)) {
      stack.push_back(session_->node(r).high);
      stack.push_back(session_->node(r).low);
    }
  }
  return out;
}

std::size_t Bdd::NonterminalCount() const {
  auto nodes = Reachable();
  return std::count_if(nodes.begin(), nodes.end(),
                       [](BddRef r) { return !IsTerminal(r); });
}

bool Bdd::Evaluate(const Attack& attack) const {
  BddRef r = root_;
  while (!IsTerminal(r)) {
    const auto& n = session_->node(r);
    r = attack.count(order().at(n.level)) ? n.high : n.low;
  }
  return r == kBddTrue;
}

Bdd FromStructureFunction(const AttackTree& tree, const VarOrder& order) {
  return FromStructureFunction(tree, std::make_shared<BddManager>(order));
}

Bdd FromStructureFunction(const AttackTree& tree,
                          std::shared_ptr<BddManager> session) {
  if (Classify(tree).dynamics == Dynamics::kDynamic) {
    throw Error(ErrorCode::kDynamicTreeRejected,
                "BDD encoding requires a static tree (no SAND gates)");
  }
  const VarOrder& order = session->order();
  const std::vector<NodeId> bas = BasOf(tree);
  if (bas.size() != order.size()) {
    throw Error(ErrorCode::kOrderMismatch,
                "variable order does not cover the tree's BAS");
  }
  for (NodeId a : bas) {
    if (!order.RankOf(a)) {
      throw Error(ErrorCode::kOrderMismatch,
                  "variable order misses '" + tree.label(a) + "'");
    }
  }
  std::vector<BddRef> value(tree.size(), kBddFalse);
  for (NodeId v : PostOrder(tree)) {
    const Node& node = tree.node(v);
    BddRef r;
    if (node.type == NodeType::kBas) {
      r = session->Variable(static_cast<std::uint32_t>(*order.RankOf(v)));
    } else {
      const bool disjunctive = node.type == NodeType::kOr;
      r = disjunctive ? kBddFalse : kBddTrue;
      for (NodeId c : node.children) {
        r = disjunctive ? session->Or(r, value[Index(c)])
                        : session->And(r, value[Index(c)]);
      }
    }
    value[Index(v)] = r;
  }
  const BddRef root = value[Index(tree.root())];
  return Bdd(std::move(session), root);
}

Bdd Minimise(const Bdd& bdd) {
  return Bdd(bdd.session(), bdd.session()->Minimise(bdd.root()));
}

AttackSuite TopPaths(const Bdd& bdd) {
  AttackSuite suite;
  Attack current;
  auto walk = [&](auto& self, BddRef r) -> void {
    if (r == kBddTrue) {
      suite.insert(current);
      return;
    }
    if (r == kBddFalse) return;
    const auto& n = bdd.manager().node(r);
    self(self, n.low);
    NodeId var = bdd.order().at(n.level);
    current.insert(var);
    self(self, n.high);
    current.erase(var);
  };
  walk(walk, bdd.root());
  return suite;
}

BddValidation Validate(const Bdd& bdd) {
  BddValidation v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.problems.push_back(std::move(msg));
  };
  const BddManager& m = bdd.manager();
  std::set<std::tuple<std::uint32_t, BddRef, BddRef>> triples;
  for (BddRef r : bdd.Reachable()) {
    if (IsTerminal(r)) continue;
    const auto& n = m.node(r);
    const std::string id = "node " + std::to_string(r);
    if (n.level >= m.terminal_level()) fail(id + " has an invalid label");
    if (n.low == n.high) fail(id + " has identical children");
    if (m.Level(n.low) <= n.level || m.Level(n.high) <= n.level) {
      fail(id + " violates the variable order");
    }
    if (!triples.emplace(n.level, n.low, n.high).second) {
      fail(id + " duplicates another (label, low, high)");
    }
    if (n.low == bdd.root() || n.high == bdd.root()) {
      fail(id + " points to the root");
    }
  }
  return v;
}

bool HasMinimalShape(const Bdd& bdd) {
  for (BddRef r : bdd.Reachable()) {
    if (IsTerminal(r)) continue;
    const auto& n = bdd.manager().node(r);
    if (n.low == kBddTrue || n.high == kBddFalse) return false;
  }
  return true;
}

}  // namespace atquant
