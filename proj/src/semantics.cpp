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

#include "atquant/semantics.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "atquant/error.hpp"

namespace atquant {
namespace {

using Mask = std::uint64_t;

void RejectDynamic(const AttackTree& tree) {
  if (Classify(tree).dynamics == Dynamics::kDynamic) {
    throw Error(ErrorCode::kDynamicTreeRejected,
                "operation requires a static tree (no SAND gates)");
  }
}

void RequireWellFormed(const AttackTree& tree) {
  WellFormedness wf = CheckWellFormed(tree);
  if (!wf.well_formed) {
    std::string cycle;
    for (std::size_t i = 0; i < wf.cycle.size(); ++i) {
      if (i) cycle += " < ";
      cycle += tree.label(wf.cycle[i]);
    }
    throw Error(ErrorCode::kIllFormed,
                "tree is ill-formed; ordering cycle " + cycle);
  }
}

// Evaluates the structure function of the static projection on bitmask
// attacks over the BAS enumeration.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const AttackTree& tree)
      : tree_(tree), bas_(BasOf(tree)), order_(PostOrder(tree)),
        bit_(tree.size(), -1), value_(tree.size(), 0) {
    for (std::size_t i = 0; i < bas_.size(); ++i) bit_[Index(bas_[i])] = int(i);
  }

  const std::vector<NodeId>& bas() const { return bas_; }

  bool Succeeds(Mask mask, NodeId v) {
    for (NodeId u : order_) {
      const Node& node = tree_.node(u);
      char result = 0;
      switch (node.type) {
        case NodeType::kBas:
          result = (mask >> bit_[Index(u)]) & 1;
          break;
        case NodeType::kOr:
          result = 0;
          for (NodeId c : node.children) result |= value_[Index(c)];
          break;
        case NodeType::kAnd:
        case NodeType::kSand:
          result = 1;
          for (NodeId c : node.children) result &= value_[Index(c)];
          break;
      }
      value_[Index(u)] = result;
      if (u == v) return result;
    }
    return value_[Index(v)];
  }

  Mask ToMask(const Attack& attack) const {
    Mask m = 0;
    for (NodeId a : attack) {
      int b = bit_.at(Index(a));
      if (b < 0) {
        throw Error(ErrorCode::kUnknownNode,
                    "'" + tree_.label(a) + "' is not a basic attack step");
      }
      m |= Mask{1} << b;
    }
    return m;
  }

  Attack ToAttack(Mask m) const {
    Attack a;
    for (std::size_t i = 0; i < bas_.size(); ++i) {
      if ((m >> i) & 1) a.insert(bas_[i]);
    }
    return a;
  }

 private:
  const AttackTree& tree_;
  std::vector<NodeId> bas_;
  std::vector<NodeId> order_;
  std::vector<int> bit_;
  std::vector<char> value_;
};

// Minimal successful masks of the static projection, in increasing order.
std::vector<Mask> MinimalMasks(MaskEvaluator& eval, NodeId root,
                               const OracleOptions& options) {
  const std::size_t n = eval.bas().size();
  if (n > options.budget || n > 62) {
    throw Error(ErrorCode::kBudgetExceeded,
                "tree has " + std::to_string(n) +
                    " basic attack steps; exhaustive enumeration is limited to " +
                    std::to_string(options.budget) +
                    " (raise the oracle budget to accept exponential cost)");
  }
  const Mask count = Mask{1} << n;
  std::vector<bool> success(count);
  for (Mask m = 0; m < count; ++m) success[m] = eval.Succeeds(m, root);
  std::vector<Mask> minimal;
  for (Mask m = 0; m < count; ++m) {
    if (!success[m]) continue;
    // Monotone function: checking single-element removals suffices.
    bool is_minimal = true;
    for (Mask rest = m; rest && is_minimal; rest &= rest - 1) {
      Mask bit = rest & (~rest + 1);
      is_minimal = !success[m ^ bit];
    }
    if (is_minimal) minimal.push_back(m);
  }
  return minimal;
}

// Transitive closure of `relation` restricted to `nodes`, as adjacency sets.
std::map<NodeId, std::set<NodeId>> Closure(const Attack& nodes,
                                           const Order& relation) {
  std::map<NodeId, std::set<NodeId>> reach;
  for (NodeId v : nodes) reach[v];
  for (const auto& [x, y] : relation) {
    if (nodes.count(x) && nodes.count(y)) reach[x].insert(y);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [x, succ] : reach) {
      std::set<NodeId> add;
      for (NodeId y : succ) {
        for (NodeId z : reach[y]) {
          if (!succ.count(z)) add.insert(z);
        }
      }
      if (!add.empty()) {
        succ.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
  return reach;
}

Order Restrict(const Order& edges, const Attack& attack) {
  Order out;
  for (const auto& [x, y] : edges) {
    if (attack.count(x) && attack.count(y)) out.emplace(x, y);
  }
  return out;
}

}  // namespace

bool StructureFunction(const AttackTree& tree, NodeId v, const Attack& attack) {
  RejectDynamic(tree);
  if (Index(v) >= tree.size()) {
    throw Error(ErrorCode::kUnknownNode, "unknown node id");
  }
  // Direct recursion on sets; independent of the bitmask path.
  auto eval = [&](auto& self, NodeId u) -> bool {
    const Node& node = tree.node(u);
    auto child = [&](NodeId c) { return self(self, c); };
    switch (node.type) {
      case NodeType::kBas:
        return attack.count(u) > 0;
      case NodeType::kOr:
        return std::any_of(node.children.begin(), node.children.end(), child);
      default:
        return std::all_of(node.children.begin(), node.children.end(), child);
    }
  };
  return eval(eval, v);
}

AttackSuite MinimalAttacksStatic(const AttackTree& tree,
                                 const OracleOptions& options) {
  RejectDynamic(tree);
  MaskEvaluator eval(tree);
  AttackSuite suite;
  for (Mask m : MinimalMasks(eval, tree.root(), options)) {
    suite.insert(eval.ToAttack(m));
  }
  return suite;
}

OrderingGraph BuildOrderingGraph(const AttackTree& tree) {
  OrderingGraph graph;
  graph.vertices = BasOf(tree);
  std::map<NodeId, std::set<NodeId>> desc;
  auto descendants = [&](NodeId v) -> const std::set<NodeId>& {
    auto it = desc.find(v);
    if (it == desc.end()) it = desc.emplace(v, Descendants(tree, v)).first;
    return it->second;
  };
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const Node& node = tree.node(NodeId{i});
    if (node.type != NodeType::kSand) continue;
    for (std::size_t k = 0; k + 1 < node.children.size(); ++k) {
      const auto& before = descendants(node.children[k]);
      const auto& after = descendants(node.children[k + 1]);
      for (NodeId a : before) {
        for (NodeId b : after) {
          graph.edges.emplace(a, b);
          ++graph.insertions;
        }
      }
    }
  }
  return graph;
}

WellFormedness CheckWellFormed(const AttackTree& tree) {
  OrderingGraph graph = BuildOrderingGraph(tree);
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& [a, b] : graph.edges) succ[a].push_back(b);

  enum Colour : std::uint8_t { kWhite, kGrey, kBlack };
  std::map<NodeId, Colour> colour;
  for (NodeId v : graph.vertices) {
    if (colour[v] != kWhite) continue;
    std::vector<std::pair<NodeId, std::size_t>> frames{{v, 0}};
    colour[v] = kGrey;
    while (!frames.empty()) {
      auto& [u, next] = frames.back();
      const auto& out = succ[u];
      if (next == out.size()) {
        colour[u] = kBlack;
        frames.pop_back();
        continue;
      }
      NodeId w = out[next++];
      if (colour[w] == kGrey) {
        // Unwind the DFS stack from w to u and close the walk.
        WellFormedness result{false, {}};
        auto it = std::find_if(frames.begin(), frames.end(),
                               [&](const auto& f) { return f.first == w; });
        for (; it != frames.end(); ++it) result.cycle.push_back(it->first);
        result.cycle.push_back(w);
        return result;
      }
      if (colour[w] == kWhite) {
        colour[w] = kGrey;
        frames.emplace_back(w, 0);
      }
    }
  }
  return {};
}

Order TransitiveReduction(const Attack& nodes, const Order& relation) {
  auto reach = Closure(nodes, relation);
  Order reduced;
  for (const auto& [x, succ] : reach) {
    for (NodeId y : succ) {
      bool implied = false;
      for (NodeId z : succ) {
        if (z != y && reach[z].count(y)) {
          implied = true;
          break;
        }
      }
      if (!implied) reduced.emplace(x, y);
    }
  }
  return reduced;
}

std::set<PosetAttack> MinimalAttacksDynamic(const AttackTree& tree,
                                            const OracleOptions& options) {
  RequireWellFormed(tree);
  const OrderingGraph graph = BuildOrderingGraph(tree);
  MaskEvaluator eval(tree);
  std::set<PosetAttack> suite;
  for (Mask m : MinimalMasks(eval, tree.root(), options)) {
    PosetAttack p;
    p.attack = eval.ToAttack(m);
    p.order = TransitiveReduction(p.attack, Restrict(graph.edges, p.attack));
    suite.insert(std::move(p));
  }
  return suite;
}

HasseDiagram Hasse(const PosetAttack& poset) {
  HasseDiagram h;
  h.nodes = poset.attack;
  h.edges = TransitiveReduction(poset.attack, poset.order);

  std::map<NodeId, NodeId> parent;
  for (NodeId v : h.nodes) parent[v] = v;
  auto find = [&](NodeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [x, y] : h.edges) {
    NodeId rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
  std::map<NodeId, std::vector<NodeId>> groups;
  for (NodeId v : h.nodes) groups[find(v)].push_back(v);
  for (auto& [root, members] : groups) h.components.push_back(std::move(members));
  return h;
}

void RequireCompatible(const AttackTree& tree, const Attribution& attribution,
                       const AttributeDomain& domain) {
  for (NodeId a : BasOf(tree)) {
    auto it = attribution.find(a);
    if (it == attribution.end()) {
      throw Error(ErrorCode::kIncompleteAttribution,
                  "no attribute value for '" + tree.label(a) + "'");
    }
    const MetricValue& v = it->second;
    bool ok = KindOf(v) == domain.kind;
    if (ok && domain.kind == ValueKind::kPareto) {
      for (const Point& p : std::get<ParetoFront>(v).points()) {
        ok = ok && p.size() == domain.component_kinds.size();
        for (std::size_t i = 0; ok && i < p.size(); ++i) {
          ok = (p[i].index() == 0) ==
               (domain.component_kinds[i] == ValueKind::kExtendedNatural);
        }
      }
    }
    if (!ok) {
      throw Error(ErrorCode::kIncompatibleDomain,
                  "value of '" + tree.label(a) + "' does not fit domain '" +
                      domain.name + "'");
    }
  }
}

MetricValue OracleMetricStatic(const AttackTree& tree,
                               const Attribution& attribution,
                               const AttributeDomain& domain,
                               const OracleOptions& options) {
  RejectDynamic(tree);
  RequireCompatible(tree, attribution, domain);
  const AttackSuite suite = MinimalAttacksStatic(tree, options);
  if (suite.empty()) {
    throw Error(ErrorCode::kEmptySuite, "tree has no successful attack");
  }
  std::optional<MetricValue> total;
  for (const Attack& attack : suite) {
    std::optional<MetricValue> value;
    for (NodeId a : attack) {
      const MetricValue& x = attribution.at(a);
      value = value ? domain.conjunction(*value, x) : x;
    }
    total = total ? domain.disjunction(*total, *value) : *value;
  }
  return *total;
}

MetricValue OracleMetricDynamic(const AttackTree& tree,
                                const Attribution& attribution,
                                const DynamicAttributeDomain& domain,
                                const OracleOptions& options) {
  RequireCompatible(tree, attribution, domain);
  const auto suite = MinimalAttacksDynamic(tree, options);
  if (suite.empty()) {
    throw Error(ErrorCode::kEmptySuite, "tree has no successful attack");
  }
  std::optional<MetricValue> total;
  for (const PosetAttack& poset : suite) {
    std::optional<MetricValue> parallel;
    for (const auto& component : Hasse(poset).components) {
      std::optional<MetricValue> chain;
      for (NodeId a : component) {
        const MetricValue& x = attribution.at(a);
        chain = chain ? domain.sequential(*chain, x) : x;
      }
      parallel = parallel ? domain.conjunction(*parallel, *chain) : *chain;
    }
    total = total ? domain.disjunction(*total, *parallel) : *parallel;
  }
  return *total;
}

bool PosetSucceeds(const AttackTree& tree, const Attack& attack,
                   const Order& order) {
  MaskEvaluator eval(tree);
  if (!eval.Succeeds(eval.ToMask(attack), tree.root())) return false;
  const OrderingGraph graph = BuildOrderingGraph(tree);
  auto reach = Closure(attack, order);
  for (const auto& [x, y] : Restrict(graph.edges, attack)) {
    if (!reach[x].count(y)) return false;
  }
  return true;
}

CoherenceReport CheckCoherence(const AttackTree& tree, std::size_t trials,
                               std::uint64_t seed, CoherenceMode mode,
                               const OracleOptions& options) {
  RequireWellFormed(tree);
  const OrderingGraph graph = BuildOrderingGraph(tree);
  MaskEvaluator eval(tree);
  const std::vector<Mask> minimal = MinimalMasks(eval, tree.root(), options);
  const std::size_t n = eval.bas().size();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, minimal.size() - 1);
  std::bernoulli_distribution coin(0.5);
  auto grow = [&](Mask m) {
    for (std::size_t i = 0; i < n; ++i) {
      if (coin(rng)) m |= Mask{1} << i;
    }
    return m;
  };

  CoherenceReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const Mask base = grow(minimal[pick(rng)]);
    const Mask super = grow(base);
    CoherenceViolation sample{eval.ToAttack(base), eval.ToAttack(super), {}};
    if (mode == CoherenceMode::kRestrictOrder) {
      sample.order = TransitiveReduction(
          sample.superset, Restrict(graph.edges, sample.superset));
    } else {
      std::vector<NodeId> line(sample.superset.begin(), sample.superset.end());
      std::shuffle(line.begin(), line.end(), rng);
      for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        sample.order.emplace(line[i], line[i + 1]);
      }
    }
    ++report.trials;
    if (!PosetSucceeds(tree, sample.superset, sample.order)) {
      report.violations.push_back(std::move(sample));
    }
  }
  return report;
}

}  // namespace atquant
