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

#include "atquant/domains.hpp"

#include <algorithm>
#include <utility>

#include "atquant/error.hpp"

namespace atquant {
namespace {

template <typename T>
const T& As(const MetricValue& v, std::string_view op) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw Error(ErrorCode::kValueKindMismatch,
              "operator '" + std::string(op) + "' applied to a " +
                  std::string(ToString(KindOf(v))) + " value");
}

using N = ExtendedNatural;

MetricValue NatMin(const MetricValue& a, const MetricValue& b) {
  return std::min(As<N>(a, "min"), As<N>(b, "min"));
}
MetricValue NatMax(const MetricValue& a, const MetricValue& b) {
  return std::max(As<N>(a, "max"), As<N>(b, "max"));
}
MetricValue NatPlus(const MetricValue& a, const MetricValue& b) {
  return As<N>(a, "+") + As<N>(b, "+");
}
MetricValue ProbMax(const MetricValue& a, const MetricValue& b) {
  return std::max(As<Probability>(a, "max"), As<Probability>(b, "max"));
}
MetricValue ProbTimes(const MetricValue& a, const MetricValue& b) {
  return Probability(As<Probability>(a, "*").value() *
                     As<Probability>(b, "*").value());
}

DynamicAttributeDomain Nat(std::string name, BinaryOp disjunction,
                           BinaryOp conjunction, BinaryOp sequential,
                           N neutral_or, N neutral_and, Direction preference,
                           KTopMode ktop, bool semiring,
                           bool semiring_dynamic) {
  DynamicAttributeDomain d;
  d.name = std::move(name);
  d.kind = ValueKind::kExtendedNatural;
  d.disjunction = std::move(disjunction);
  d.conjunction = std::move(conjunction);
  d.sequential = std::move(sequential);
  d.neutral_or = neutral_or;
  d.neutral_and = neutral_and;
  d.preference = preference;
  d.ktop_mode = ktop;
  d.is_semiring = semiring;
  d.is_semiring_dynamic = semiring_dynamic;
  return d;
}

std::optional<DynamicAttributeDomain> ScalarBuiltin(std::string_view name) {
  const N inf = N::Infinity();
  const N zero(0);
  if (name == "min-cost") {
    return Nat("min-cost", NatMin, NatPlus, NatPlus, inf, zero, Direction::kMin,
               KTopMode::kMinAdditive, true, false);
  }
  if (name == "min-time-seq") {
    return Nat("min-time-seq", NatMin, NatPlus, NatPlus, inf, zero,
               Direction::kMin, KTopMode::kMinAdditive, true, false);
  }
  if (name == "min-time-par") {
    return Nat("min-time-par", NatMin, NatMax, NatPlus, inf, zero,
               Direction::kMin, KTopMode::kUnsupported, true, true);
  }
  if (name == "min-skill") {
    return Nat("min-skill", NatMin, NatMax, NatMax, inf, zero, Direction::kMin,
               KTopMode::kUnsupported, true, true);
  }
  if (name == "max-challenge") {
    return Nat("max-challenge", NatMax, NatMax, NatMax, zero, zero,
               Direction::kMax, KTopMode::kUnsupported, true, true);
  }
  if (name == "max-damage") {
    return Nat("max-damage", NatMax, NatPlus, NatPlus, zero, zero,
               Direction::kMax, KTopMode::kMaxAdditive, true, false);
  }
  if (name == "cost-to-defend") {
    // (N∞, +, min): min does not distribute over +.
    DynamicAttributeDomain d =
        Nat("cost-to-defend", NatPlus, NatMin, NatMin, zero, inf,
            Direction::kMin, KTopMode::kUnsupported, false, false);
    d.preference.reset();
    return d;
  }
  if (name == "prob-max") {
    DynamicAttributeDomain d;
    d.name = "prob-max";
    d.kind = ValueKind::kProbability;
    d.disjunction = ProbMax;
    d.conjunction = ProbTimes;
    d.sequential = ProbTimes;
    d.neutral_or = Probability(0);
    d.neutral_and = Probability(1);
    d.preference = Direction::kMax;
    d.is_semiring = true;
    // x * (y * z) differs from (x * y) * (x * z).
    d.is_semiring_dynamic = false;
    return d;
  }
  return std::nullopt;
}

Scalar ToScalar(const MetricValue& v) {
  if (const auto* n = std::get_if<ExtendedNatural>(&v)) return *n;
  if (const auto* p = std::get_if<Probability>(&v)) return *p;
  throw Error(ErrorCode::kValueKindMismatch,
              "nested Pareto values are not supported");
}

MetricValue ToMetric(const Scalar& s) {
  return std::visit([](const auto& x) -> MetricValue { return x; }, s);
}

struct ProductSpec {
  std::vector<BinaryOp> ops;
  std::vector<Direction> directions;
};

MetricValue Combine(const ProductSpec& spec, const MetricValue& a,
                    const MetricValue& b) {
  const auto& fa = As<ParetoFront>(a, "pareto");
  const auto& fb = As<ParetoFront>(b, "pareto");
  std::vector<Point> points;
  points.reserve(fa.points().size() * fb.points().size());
  for (const Point& u : fa.points()) {
    for (const Point& w : fb.points()) {
      Point p(spec.ops.size());
      for (std::size_t i = 0; i < spec.ops.size(); ++i) {
        p[i] = ToScalar(spec.ops[i](ToMetric(u[i]), ToMetric(w[i])));
      }
      points.push_back(std::move(p));
    }
  }
  return ParetoFront::Prune(std::move(points), spec.directions);
}

template <typename Domain>
AttributeDomain ProductBase(const std::vector<Domain>& components,
                            const std::vector<Direction>& directions) {
  if (components.empty()) {
    throw Error(ErrorCode::kEmptyProduct, "Pareto product of no domains");
  }
  if (components.size() != directions.size()) {
    throw Error(ErrorCode::kEmptyProduct,
                "Pareto product needs one direction per component");
  }
  AttributeDomain d;
  d.kind = ValueKind::kPareto;
  d.directions = directions;
  d.name = "pareto(";
  ProductSpec conj{{}, directions};
  bool semiring = true;
  bool neutral_and = true;
  Point unit;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const AttributeDomain& c = components[i];
    if (c.kind == ValueKind::kPareto) {
      throw Error(ErrorCode::kValueKindMismatch,
                  "Pareto components must be scalar domains");
    }
    d.name += (i ? "," : "") + c.name;
    d.component_kinds.push_back(c.kind);
    conj.ops.push_back(c.conjunction);
    semiring = semiring && c.is_semiring;
    if (c.neutral_and) {
      unit.push_back(ToScalar(*c.neutral_and));
    } else {
      neutral_and = false;
    }
  }
  d.name += ")";
  d.disjunction = [directions](const MetricValue& a, const MetricValue& b) {
    const auto& fa = As<ParetoFront>(a, "pareto");
    const auto& fb = As<ParetoFront>(b, "pareto");
    std::vector<Point> points = fa.points();
    points.insert(points.end(), fb.points().begin(), fb.points().end());
    return MetricValue(ParetoFront::Prune(std::move(points), directions));
  };
  d.conjunction = [conj](const MetricValue& a, const MetricValue& b) {
    return Combine(conj, a, b);
  };
  d.neutral_or = ParetoFront{};
  if (neutral_and) d.neutral_and = SinglePoint(std::move(unit));
  d.is_semiring = semiring;
  return d;
}

}  // namespace

MetricValue SinglePoint(Point point) {
  std::vector<Point> points;
  points.push_back(std::move(point));
  // Any direction vector of the right arity works for a single point.
  std::vector<Direction> dirs(points.front().size(), Direction::kMin);
  return ParetoFront::Prune(std::move(points), dirs);
}

AttributeDomain ParetoProduct(const std::vector<AttributeDomain>& components,
                              const std::vector<Direction>& directions) {
  return ProductBase(components, directions);
}

DynamicAttributeDomain ParetoProduct(
    const std::vector<DynamicAttributeDomain>& components,
    const std::vector<Direction>& directions) {
  DynamicAttributeDomain d;
  static_cast<AttributeDomain&>(d) = ProductBase(components, directions);
  ProductSpec seq{{}, directions};
  for (const auto& c : components) seq.ops.push_back(c.sequential);
  d.sequential = [seq](const MetricValue& a, const MetricValue& b) {
    return Combine(seq, a, b);
  };
  // Lifting ▷ to sets of points creates cross terms, so ▷ over △ does not
  // carry over from the components.
  d.is_semiring_dynamic = false;
  return d;
}

const std::vector<std::string>& BuiltinNames() {
  static const std::vector<std::string> names = {
      "min-cost",      "min-time-seq", "min-time-par", "min-skill",
      "max-challenge", "max-damage",   "prob-max",     "cost-to-defend"};
  return names;
}

DynamicAttributeDomain Builtin(std::string_view name) {
  if (auto d = ScalarBuiltin(name)) return *std::move(d);
  constexpr std::string_view kPrefix = "pareto(";
  if (name.starts_with(kPrefix) && name.ends_with(")")) {
    std::string_view inner =
        name.substr(kPrefix.size(), name.size() - kPrefix.size() - 1);
    std::vector<DynamicAttributeDomain> components;
    std::vector<Direction> directions;
    while (!inner.empty()) {
      std::size_t comma = inner.find(',');
      std::string_view part = inner.substr(0, comma);
      while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
      while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
      auto c = ScalarBuiltin(part);
      if (!c || !c->preference) {
        throw Error(ErrorCode::kUnknownDomain,
                    "unknown Pareto component '" + std::string(part) + "'");
      }
      directions.push_back(*c->preference);
      components.push_back(*std::move(c));
      if (comma == std::string_view::npos) break;
      inner.remove_prefix(comma + 1);
    }
    return ParetoProduct(components, directions);
  }
  throw Error(ErrorCode::kUnknownDomain,
              "unknown attribute domain '" + std::string(name) + "'");
}

const LawResult* LawReport::Find(std::string_view law) const {
  for (const LawResult& r : laws) {
    if (r.law == law) return &r;
  }
  return nullptr;
}

bool LawReport::Holds(std::string_view law) const {
  const LawResult* r = Find(law);
  return r != nullptr && r->holds;
}

bool LawReport::AllHold() const {
  return std::all_of(laws.begin(), laws.end(),
                     [](const LawResult& r) { return r.holds; });
}

bool LawReport::SemiringHolds() const {
  return Holds("or-assoc") && Holds("or-comm") && Holds("and-assoc") &&
         Holds("and-comm") && Holds("and-over-or");
}

bool LawReport::DynamicSemiringHolds() const {
  return SemiringHolds() && Holds("seq-assoc") && Holds("seq-comm") &&
         Holds("seq-over-and") && Holds("seq-over-or");
}

namespace {

class LawChecker {
 public:
  explicit LawChecker(const std::vector<Triple>& samples)
      : samples_(samples) {}

  // `law(x, y, z)` returns the two sides that must agree.
  template <typename Law>
  void Check(std::string name, Law law) {
    LawResult result;
    result.law = std::move(name);
    for (const Triple& t : samples_) {
      auto [lhs, rhs] = law(t[0], t[1], t[2]);
      if (!(lhs == rhs)) {
        result.holds = false;
        result.counterexample = t;
        result.lhs = std::move(lhs);
        result.rhs = std::move(rhs);
        break;
      }
    }
    report_.laws.push_back(std::move(result));
  }

  LawReport Take() { return std::move(report_); }

 private:
  const std::vector<Triple>& samples_;
  LawReport report_;
};

using Sides = std::pair<MetricValue, MetricValue>;

void CheckPair(LawChecker& c, const std::string& prefix, const BinaryOp& op) {
  c.Check(prefix + "-assoc", [&](auto& x, auto& y, auto& z) {
    return Sides{op(op(x, y), z), op(x, op(y, z))};
  });
  c.Check(prefix + "-comm", [&](auto& x, auto& y, auto&) {
    return Sides{op(x, y), op(y, x)};
  });
}

// x ⊗ (y ⊕ z) = (x ⊗ y) ⊕ (x ⊗ z)
void CheckDistributes(LawChecker& c, const std::string& name,
                      const BinaryOp& outer, const BinaryOp& inner) {
  c.Check(name, [&](auto& x, auto& y, auto& z) {
    return Sides{outer(x, inner(y, z)), inner(outer(x, y), outer(x, z))};
  });
}

void CheckStatic(LawChecker& c, const AttributeDomain& d) {
  CheckPair(c, "or", d.disjunction);
  CheckPair(c, "and", d.conjunction);
  CheckDistributes(c, "and-over-or", d.conjunction, d.disjunction);
  if (d.neutral_or) {
    c.Check("or-neutral", [&](auto& x, auto&, auto&) {
      return Sides{d.disjunction(*d.neutral_or, x), x};
    });
  }
  if (d.neutral_and) {
    c.Check("and-neutral", [&](auto& x, auto&, auto&) {
      return Sides{d.conjunction(*d.neutral_and, x), x};
    });
  }
}

}  // namespace

LawReport CheckSemiringLaws(const AttributeDomain& domain,
                            const std::vector<Triple>& samples) {
  LawChecker c(samples);
  CheckStatic(c, domain);
  return c.Take();
}

LawReport CheckSemiringLaws(const DynamicAttributeDomain& domain,
                            const std::vector<Triple>& samples) {
  LawChecker c(samples);
  CheckStatic(c, domain);
  CheckPair(c, "seq", domain.sequential);
  CheckDistributes(c, "seq-over-and", domain.sequential, domain.conjunction);
  CheckDistributes(c, "seq-over-or", domain.sequential, domain.disjunction);
  return c.Take();
}

}  // namespace atquant
