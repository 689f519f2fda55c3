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

#ifndef ATQUANT_DOMAINS_HPP_
#define ATQUANT_DOMAINS_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atquant/values.hpp"

namespace atquant {

using BinaryOp =
    std::function<MetricValue(const MetricValue&, const MetricValue&)>;

/// Whether k-top values can be found as k-shortest paths with additive
/// weights, and with which sign.
enum class KTopMode { kMinAdditive, kMaxAdditive, kUnsupported };

/// Value carrier with a disjunctive (▽) and a conjunctive (△) operator.
///
/// Domains are plain values: the built-ins below are ordinary instances,
/// and callers may assemble their own and run CheckSemiringLaws on them.
struct AttributeDomain {
  std::string name;
  ValueKind kind = ValueKind::kExtendedNatural;
  BinaryOp disjunction;
  BinaryOp conjunction;
  std::optional<MetricValue> neutral_or;
  std::optional<MetricValue> neutral_and;
  bool is_semiring = false;
  KTopMode ktop_mode = KTopMode::kUnsupported;
  /// Preference of ▽ for totally ordered scalar domains (min or max).
  std::optional<Direction> preference;
  /// Pareto domains only: per-coordinate preference and value kind.
  std::vector<Direction> directions;
  std::vector<ValueKind> component_kinds;

  bool has_neutrals() const { return neutral_or && neutral_and; }
};

/// Attribute domain extended with the sequential operator ▷.
struct DynamicAttributeDomain : AttributeDomain {
  BinaryOp sequential;
  bool is_semiring_dynamic = false;
};

/// Looks up a built-in domain by name: min-cost, min-time-seq, min-time-par,
/// min-skill, max-challenge, max-damage, prob-max, cost-to-defend, or
/// pareto(<name>,<name>,...) over scalar built-ins. Throws kUnknownDomain.
DynamicAttributeDomain Builtin(std::string_view name);

/// Scalar built-in names, in a stable order.
const std::vector<std::string>& BuiltinNames();

/// Product domain over Pareto fronts. ▽ unions then prunes, △ combines
/// every pair of points componentwise then prunes. Throws kEmptyProduct.
AttributeDomain ParetoProduct(const std::vector<AttributeDomain>& components,
                              const std::vector<Direction>& directions);

/// As above, also lifting ▷ componentwise.
DynamicAttributeDomain ParetoProduct(
    const std::vector<DynamicAttributeDomain>& components,
    const std::vector<Direction>& directions);

/// Wraps a point as a single-point front.
MetricValue SinglePoint(Point point);

using Triple = std::array<MetricValue, 3>;

struct LawResult {
  std::string law;
  bool holds = true;
  /// First failing sample, with the two sides that differed.
  std::optional<Triple> counterexample;
  std::optional<MetricValue> lhs;
  std::optional<MetricValue> rhs;
};

struct LawReport {
  std::vector<LawResult> laws;

  const LawResult* Find(std::string_view law) const;
  bool Holds(std::string_view law) const;
  bool AllHold() const;
  /// Commutative semiring laws for (▽, △), neutrals excluded.
  bool SemiringHolds() const;
  /// Semiring laws plus ▷ associative, commutative, distributing over △, ▽.
  bool DynamicSemiringHolds() const;
};

/// Evaluates associativity, commutativity, distributivity, and (when the
/// domain declares them) neutral-element laws on every sample triple.
/// Law names: or-assoc, or-comm, and-assoc, and-comm, and-over-or,
/// or-neutral, and-neutral, and for dynamic domains seq-assoc, seq-comm,
/// seq-over-and, seq-over-or.
LawReport CheckSemiringLaws(const AttributeDomain& domain,
                            const std::vector<Triple>& samples);
LawReport CheckSemiringLaws(const DynamicAttributeDomain& domain,
                            const std::vector<Triple>& samples);

}  // namespace atquant

#endif  // ATQUANT_DOMAINS_HPP_
