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

#include "atquant/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <utility>

#include "atquant/error.hpp"

namespace atquant {
namespace {

// Post-order over the sub-DAG below `v`, each node once.
std::vector<NodeId> PostOrderFrom(const AttackTree& tree, NodeId v) {
  if (v == tree.root()) return PostOrder(tree);
  std::vector<NodeId> order;
  std::vector<bool> done(tree.size(), false);
  std::vector<std::pair<NodeId, std::size_t>> frames{{v, 0}};
  while (!frames.empty()) {
    auto& [u, next] = frames.back();
    const auto& children = tree.node(u).children;
    if (next == children.size()) {
      done[Index(u)] = true;
      order.push_back(u);
      frames.pop_back();
      continue;
    }
    NodeId c = children[next++];
    if (!done[Index(c)]) frames.emplace_back(c, 0);
  }
  return order;
}

// Left fold per gate type over the sub-DAG below `v`; shared nodes are
// evaluated once and reused by every parent.
template <typename GateOp>
MetricValue Fold(const AttackTree& tree, NodeId v,
                 const Attribution& attribution, GateOp gate_op) {
  std::vector<std::optional<MetricValue>> value(tree.size());
  for (NodeId u : PostOrderFrom(tree, v)) {
    const Node& node = tree.node(u);
    if (node.type == NodeType::kBas) {
      auto it = attribution.find(u);
      if (it == attribution.end()) {
        throw Error(ErrorCode::kIncompleteAttribution,
                    "no attribute value for '" + node.label + "'");
      }
      value[Index(u)] = it->second;
      continue;
    }
    const BinaryOp& op = gate_op(node.type);
    MetricValue acc = *value[Index(node.children.front())];
    for (std::size_t i = 1; i < node.children.size(); ++i) {
      acc = op(acc, *value[Index(node.children[i])]);
    }
    value[Index(u)] = std::move(acc);
  }
  return *std::move(value[Index(v)]);
}

void RequireTree(const StructureKind& kind) {
  if (kind.shape == Shape::kDag) {
    throw Error(ErrorCode::kDagRejected,
                "bottom-up evaluation requires a tree-structured model; "
                "shared subtrees make it unsound");
  }
}

void RequireNode(const AttackTree& tree, NodeId v) {
  if (Index(v) >= tree.size()) {
    throw Error(ErrorCode::kUnknownNode, "unknown node id");
  }
}

}  // namespace

MetricValue BuSat(const AttackTree& tree, NodeId v,
                  const Attribution& attribution,
                  const AttributeDomain& domain) {
  RequireNode(tree, v);
  const StructureKind kind = Classify(tree);
  if (kind.dynamics == Dynamics::kDynamic) {
    throw Error(ErrorCode::kDynamicTreeRejected,
                "BU_SAT requires a static tree");
  }
  RequireTree(kind);
  if (!domain.is_semiring) {
    throw Error(ErrorCode::kNotSemiring,
                "domain '" + domain.name + "' is not a semiring");
  }
  return Fold(tree, v, attribution, [&](NodeType t) -> const BinaryOp& {
    return t == NodeType::kOr ? domain.disjunction : domain.conjunction;
  });
}

MetricValue BuDat(const AttackTree& tree, NodeId v,
                  const Attribution& attribution,
                  const DynamicAttributeDomain& domain) {
  RequireNode(tree, v);
  RequireTree(Classify(tree));
  WellFormedness wf = CheckWellFormed(tree);
  if (!wf.well_formed) {
    throw Error(ErrorCode::kIllFormed, "tree is ill-formed");
  }
  if (!domain.is_semiring_dynamic) {
    throw Error(ErrorCode::kNotSemiringDynamic,
                "domain '" + domain.name + "' is not a semiring dynamic domain");
  }
  return Fold(tree, v, attribution, [&](NodeType t) -> const BinaryOp& {
    switch (t) {
      case NodeType::kOr: return domain.disjunction;
      case NodeType::kSand: return domain.sequential;
      default: return domain.conjunction;
    }
  });
}

MetricValue BottomUpUnchecked(const AttackTree& tree,
                              const Attribution& attribution,
                              const DynamicAttributeDomain& domain) {
  return Fold(tree, tree.root(), attribution,
              [&](NodeType t) -> const BinaryOp& {
                switch (t) {
                  case NodeType::kOr: return domain.disjunction;
                  case NodeType::kSand: return domain.sequential;
                  default: return domain.conjunction;
                }
              });
}

MetricValue BuBdd(const Bdd& bdd, const Attribution& attribution,
                  const AttributeDomain& domain, BuBddStats* stats) {
  return BuBdd(bdd, bdd.root(), attribution, domain, stats);
}

MetricValue BuBdd(const Bdd& bdd, BddRef w, const Attribution& attribution,
                  const AttributeDomain& domain, BuBddStats* stats) {
  if (!domain.is_semiring) {
    throw Error(ErrorCode::kNotSemiring,
                "domain '" + domain.name + "' is not a semiring");
  }
  if (!domain.has_neutrals()) {
    throw Error(ErrorCode::kMissingNeutrals,
                "domain '" + domain.name + "' lacks neutral elements");
  }
  const BddManager& m = bdd.manager();
  std::vector<std::optional<MetricValue>> memo(m.store_size());
  std::size_t visited = 0;
  auto bu = [&](auto& self, BddRef r) -> const MetricValue& {
    if (memo[r]) return *memo[r];
    ++visited;
    if (r == kBddFalse) {
      memo[r] = *domain.neutral_or;
    } else if (r == kBddTrue) {
      memo[r] = *domain.neutral_and;
    } else {
      const auto& n = m.node(r);
      const NodeId label = bdd.Label(r);
      auto it = attribution.find(label);
      if (it == attribution.end()) {
        throw Error(ErrorCode::kIncompleteAttribution,
                    "no attribute value for BAS id " +
                        std::to_string(Index(label)));
      }
      MetricValue low = self(self, n.low);
      MetricValue high = self(self, n.high);
      memo[r] = domain.disjunction(low, domain.conjunction(high, it->second));
    }
    return *memo[r];
  };
  MetricValue result = bu(bu, w);
  if (stats) stats->visited_nodes = visited;
  return result;
}

SignedWeight operator+(SignedWeight a, SignedWeight b) {
  if (a.infinity != 0 || b.infinity != 0) {
    if (a.infinity * b.infinity < 0) {
      throw std::domain_error("adding infinities of opposite sign");
    }
    return {0, a.infinity != 0 ? a.infinity : b.infinity};
  }
  std::int64_t sum;
  if (__builtin_add_overflow(a.value, b.value, &sum)) {
    throw std::overflow_error("k-top path weight overflow");
  }
  return {sum, 0};
}

bool operator<(const SignedWeight& a, const SignedWeight& b) {
  if (a.infinity != b.infinity) return a.infinity < b.infinity;
  return a.infinity == 0 && a.value < b.value;
}

EdgeWeighting BuildEdgeWeighting(const Bdd& bdd, const Attribution& attribution,
                                 const AttributeDomain& domain) {
  if (domain.ktop_mode == KTopMode::kUnsupported ||
      domain.kind != ValueKind::kExtendedNatural) {
    throw Error(ErrorCode::kUnsupportedDomainForKTop,
                "k-top needs an additive min or max domain; '" + domain.name +
                    "' is not one");
  }
  EdgeWeighting q;
  q.sign = domain.ktop_mode == KTopMode::kMinAdditive ? 1 : -1;
  q.high_weight.resize(bdd.manager().store_size());
  for (BddRef r : bdd.Reachable()) {
    if (IsTerminal(r)) continue;
    const NodeId label = bdd.Label(r);
    auto it = attribution.find(label);
    if (it == attribution.end()) {
      throw Error(ErrorCode::kIncompleteAttribution,
                  "no attribute value for BAS id " +
                      std::to_string(Index(label)));
    }
    const auto* x = std::get_if<ExtendedNatural>(&it->second);
    if (x == nullptr) {
      throw Error(ErrorCode::kIncompatibleDomain,
                  "k-top weights must be extended naturals");
    }
    if (x->infinite()) {
      q.high_weight[r] = SignedWeight{0, q.sign};
    } else {
      if (x->value() > std::uint64_t(std::numeric_limits<std::int64_t>::max())) {
        throw std::overflow_error("attribute too large for k-top weights");
      }
      q.high_weight[r] = SignedWeight{q.sign * std::int64_t(x->value()), 0};
    }
  }
  return q;
}

namespace {

struct PartialPath {
  SignedWeight weight;
  // Edge choices from the current node down to ⊤; false = low.
  std::vector<bool> edges;

  friend bool operator<(const PartialPath& a, const PartialPath& b) {
    if (a.weight < b.weight) return true;
    if (b.weight < a.weight) return false;
    return a.edges < b.edges;
  }
};

// k lightest root-to-⊤ paths of a DAG with zero-weight low edges. Each node
// keeps its own k best suffixes, merged from its two children.
std::vector<PartialPath> KShortestPaths(const Bdd& bdd, const EdgeWeighting& q,
                                        std::size_t k) {
  const BddManager& m = bdd.manager();
  std::map<BddRef, std::vector<PartialPath>> best;
  best[kBddFalse] = {};
  best[kBddTrue] = {PartialPath{}};
  auto solve = [&](auto& self, BddRef r) -> const std::vector<PartialPath>& {
    if (auto it = best.find(r); it != best.end()) return it->second;
    const auto& n = m.node(r);
    std::vector<PartialPath> merged;
    for (const PartialPath& p : self(self, n.low)) {
      PartialPath ext{p.weight, {false}};
      ext.edges.insert(ext.edges.end(), p.edges.begin(), p.edges.end());
      merged.push_back(std::move(ext));
    }
    for (const PartialPath& p : self(self, n.high)) {
      PartialPath ext{p.weight + *q.high_weight[r], {true}};
      ext.edges.insert(ext.edges.end(), p.edges.begin(), p.edges.end());
      merged.push_back(std::move(ext));
    }
    std::sort(merged.begin(), merged.end());
    if (merged.size() > k) merged.resize(k);
    return best[r] = std::move(merged);
  };
  return solve(solve, bdd.root());
}

}  // namespace

std::vector<RankedAttack> KTop(const Bdd& bdd, std::size_t k,
                               const Attribution& attribution,
                               const AttributeDomain& domain) {
  if (k == 0) {
    throw Error(ErrorCode::kIncompatibleDomain, "k must be at least 1");
  }
  const EdgeWeighting q = BuildEdgeWeighting(bdd, attribution, domain);
  std::vector<RankedAttack> out;
  for (const PartialPath& p : KShortestPaths(bdd, q, k)) {
    RankedAttack ranked;
    if (p.weight.infinity != 0) {
      ranked.value = ExtendedNatural::Infinity();
    } else {
      ranked.value = ExtendedNatural(std::uint64_t(q.sign * p.weight.value));
    }
    BddRef r = bdd.root();
    for (bool high : p.edges) {
      if (high) ranked.attack.insert(bdd.Label(r));
      r = high ? bdd.manager().node(r).high : bdd.manager().node(r).low;
    }
    out.push_back(std::move(ranked));
  }
  return out;
}

Probability TotalProbabilityTree(const AttackTree& tree,
                                 const Attribution& attribution) {
  const StructureKind kind = Classify(tree);
  if (kind.dynamics == Dynamics::kDynamic) {
    throw Error(ErrorCode::kDynamicTreeRejected,
                "total probability requires a static tree");
  }
  RequireTree(kind);
  std::vector<mpq_class> p(tree.size());
  for (NodeId u : PostOrder(tree)) {
    const Node& node = tree.node(u);
    if (node.type == NodeType::kBas) {
      auto it = attribution.find(u);
      if (it == attribution.end()) {
        throw Error(ErrorCode::kIncompleteAttribution,
                    "no attribute value for '" + node.label + "'");
      }
      const auto* q = std::get_if<Probability>(&it->second);
      if (q == nullptr) {
        throw Error(ErrorCode::kNotProbability,
                    "'" + node.label + "' is not given a probability");
      }
      p[Index(u)] = q->value();
      continue;
    }
    mpq_class acc = p[Index(node.children.front())];
    for (std::size_t i = 1; i < node.children.size(); ++i) {
      const mpq_class& x = p[Index(node.children[i])];
      // Disjoint subtrees are independent.
      acc = node.type == NodeType::kOr ? mpq_class(acc + x - acc * x)
                                       : mpq_class(acc * x);
    }
    p[Index(u)] = acc;
  }
  return Probability(p[Index(tree.root())]);
}

std::string_view ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kAuto: return "auto";
    case Algorithm::kBottomUp: return "bu";
    case Algorithm::kBdd: return "bdd";
    case Algorithm::kOracle: return "oracle";
  }
  return "?";
}

std::optional<Algorithm> AlgorithmFromString(std::string_view text) {
  if (text == "auto") return Algorithm::kAuto;
  if (text == "bu") return Algorithm::kBottomUp;
  if (text == "bdd") return Algorithm::kBdd;
  if (text == "oracle") return Algorithm::kOracle;
  return std::nullopt;
}

namespace {

Bdd MinimisedBdd(const AnalysisRequest& req) {
  VarOrder order = req.order ? *req.order : DefaultOrder(*req.tree);
  return Minimise(FromStructureFunction(*req.tree, order));
}

constexpr const char* kDagDatWarning =
    "exponential fallback: no efficient algorithm is known for "
    "DAG-structured dynamic trees; enumerating all attacks";

void RunOracle(const AnalysisRequest& req, bool dynamic, AnalysisResult& out) {
  out.algorithm = "oracle";
  out.value = dynamic ? OracleMetricDynamic(*req.tree, *req.attribution,
                                            *req.domain, req.oracle)
                      : OracleMetricStatic(*req.tree, *req.attribution,
                                           *req.domain, req.oracle);
}

void RunBdd(const AnalysisRequest& req, AnalysisResult& out) {
  const Bdd bdd = MinimisedBdd(req);
  out.algorithm = "bdd";
  out.value = BuBdd(bdd, *req.attribution, *req.domain);
  out.stats.bdd_nodes = bdd.NodeCount();
}

}  // namespace

AnalysisResult Analyze(const AnalysisRequest& req) {
  if (!req.tree || !req.attribution || !req.domain) {
    throw std::invalid_argument("analysis request is incomplete");
  }
  const auto start = std::chrono::steady_clock::now();
  const AttackTree& tree = *req.tree;
  const DynamicAttributeDomain& domain = *req.domain;
  const StructureKind kind = Classify(tree);
  const bool dynamic = kind.dynamics == Dynamics::kDynamic;
  const bool dag = kind.shape == Shape::kDag;
  RequireCompatible(tree, *req.attribution, domain);

  AnalysisResult out;
  out.metric = domain.name;
  out.stats.nodes = tree.size();

  if (req.k) {
    if (req.algorithm != Algorithm::kAuto && req.algorithm != Algorithm::kBdd) {
      throw Error(ErrorCode::kIncompatibleDomain,
                  "k-top values are computed on the BDD only");
    }
    if (dynamic) {
      throw Error(ErrorCode::kDynamicTreeRejected,
                  "k-top values require a static tree");
    }
    if (*req.k == 0) {
      throw Error(ErrorCode::kEmptySuite, "k must be at least 1");
    }
    const Bdd bdd = MinimisedBdd(req);
    out.algorithm = "k-top";
    out.ranked = KTop(bdd, *req.k, *req.attribution, domain);
    out.value = out.ranked.front().value;
    out.stats.bdd_nodes = bdd.NodeCount();
  } else {
    switch (req.algorithm) {
      case Algorithm::kAuto:
        if (dynamic && dag) {
          RunOracle(req, true, out);
          out.warnings.push_back(kDagDatWarning);
        } else if (dynamic) {
          if (domain.is_semiring_dynamic) {
            out.algorithm = "bu-dat";
            out.value = BuDat(tree, tree.root(), *req.attribution, domain);
          } else {
            RunOracle(req, true, out);
            out.warnings.push_back(
                "exponential fallback: domain is not a semiring dynamic "
                "domain");
          }
        } else if (!dag && domain.is_semiring) {
          out.algorithm = "bu";
          out.value = BuSat(tree, tree.root(), *req.attribution, domain);
        } else if (dag && domain.is_semiring && domain.has_neutrals()) {
          RunBdd(req, out);
        } else {
          RunOracle(req, false, out);
          out.warnings.push_back(
              domain.is_semiring
                  ? "exponential fallback: domain lacks neutral elements"
                  : "exponential fallback: domain is not a semiring");
        }
        break;
      case Algorithm::kBottomUp:
        if (dynamic) {
          out.algorithm = "bu-dat";
          out.value = BuDat(tree, tree.root(), *req.attribution, domain);
        } else {
          out.algorithm = "bu";
          out.value = BuSat(tree, tree.root(), *req.attribution, domain);
        }
        break;
      case Algorithm::kBdd:
        if (dynamic) {
          throw Error(ErrorCode::kDynamicTreeRejected,
                      "the BDD algorithm requires a static tree");
        }
        RunBdd(req, out);
        break;
      case Algorithm::kOracle:
        RunOracle(req, dynamic, out);
        break;
    }
  }
  out.stats.millis = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

}  // namespace atquant
