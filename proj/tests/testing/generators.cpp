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

#include "testing/generators.hpp"

#include <algorithm>
#include <string>

#include "atquant/semantics.hpp"

namespace atquant::testing {
namespace {

std::size_t Uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool Chance(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

bool Shares(const AttackTree& tree) {
  std::vector<int> parents(tree.size(), 0);
  for (const Node& n : tree.nodes()) {
    for (NodeId c : n.children) ++parents[Index(c)];
  }
  return std::any_of(parents.begin(), parents.end(),
                     [](int p) { return p > 1; });
}

}  // namespace

AttackTree RandomTree(std::mt19937_64& rng, const TreeShape& shape) {
  const std::size_t bas = Uniform(rng, shape.min_bas, shape.max_bas);
  std::vector<NodeSpec> specs;
  std::vector<std::string> open;
  std::vector<std::string> used;
  for (std::size_t i = 0; i < bas; ++i) {
    specs.push_back({"b" + std::to_string(i), NodeType::kBas, {}});
    open.push_back(specs.back().label);
  }
  std::size_t gates = 0;
  while (open.size() > 1) {
    std::shuffle(open.begin(), open.end(), rng);
    const std::size_t take =
        std::min(open.size(), Uniform(rng, 2, std::max<std::size_t>(2, shape.max_children)));
    std::vector<std::string> children(open.end() - take, open.end());
    open.resize(open.size() - take);
    if (!used.empty() && Chance(rng, shape.share)) {
      const std::string& extra = used[Uniform(rng, 0, used.size() - 1)];
      children.insert(children.begin() + Uniform(rng, 0, children.size()),
                      extra);
    }
    for (const auto& c : children) used.push_back(c);
    NodeType type = Chance(rng, 0.5) ? NodeType::kOr : NodeType::kAnd;
    if (Chance(rng, shape.sand)) type = NodeType::kSand;
    specs.push_back({"g" + std::to_string(gates++), type, children});
    open.push_back(specs.back().label);
  }
  return AttackTree::Build(specs, open.front());
}

AttackTree RandomDag(std::mt19937_64& rng, const TreeShape& shape) {
  TreeShape s = shape;
  s.min_bas = std::max<std::size_t>(s.min_bas, 3);
  s.share = std::max(s.share, 0.5);
  for (;;) {
    AttackTree t = RandomTree(rng, s);
    if (Shares(t)) return t;
  }
}

AttackTree RandomWellFormed(std::mt19937_64& rng, const TreeShape& shape) {
  TreeShape s = shape;
  if (s.sand == 0.0) s.sand = 0.4;
  for (;;) {
    AttackTree t = RandomTree(rng, s);
    if (Classify(t).dynamics == Dynamics::kDynamic &&
        CheckWellFormed(t).well_formed) {
      return t;
    }
  }
}

namespace {

Scalar RandomScalar(std::mt19937_64& rng, ValueKind kind) {
  if (kind == ValueKind::kProbability) {
    return Probability(mpq_class(static_cast<long>(Uniform(rng, 0, 20)), 20));
  }
  if (Chance(rng, 0.05)) return ExtendedNatural::Infinity();
  return ExtendedNatural(Uniform(rng, 0, 20));
}

}  // namespace

MetricValue RandomValue(std::mt19937_64& rng, const AttributeDomain& domain) {
  if (domain.kind == ValueKind::kPareto) {
    Point p;
    for (ValueKind k : domain.component_kinds) p.push_back(RandomScalar(rng, k));
    return SinglePoint(std::move(p));
  }
  return std::visit([](const auto& x) -> MetricValue { return x; },
                    RandomScalar(rng, domain.kind));
}

Attribution RandomAttribution(std::mt19937_64& rng, const AttackTree& tree,
                              const AttributeDomain& domain) {
  Attribution out;
  for (NodeId a : BasOf(tree)) out.emplace(a, RandomValue(rng, domain));
  return out;
}

VarOrder RandomOrder(std::mt19937_64& rng, const AttackTree& tree) {
  std::vector<NodeId> seq = BasOf(tree);
  std::shuffle(seq.begin(), seq.end(), rng);
  return VarOrder(std::move(seq));
}

std::vector<Triple> RandomTriples(std::mt19937_64& rng,
                                  const AttributeDomain& domain,
                                  std::size_t count) {
  std::vector<Triple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({RandomValue(rng, domain), RandomValue(rng, domain),
                   RandomValue(rng, domain)});
  }
  return out;
}

}  // namespace atquant::testing
