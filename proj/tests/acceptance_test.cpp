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

// Acceptance checks. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines, and exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atquant/analysis.hpp"
#include "atquant/bdd.hpp"
#include "atquant/domains.hpp"
#include "atquant/error.hpp"
#include "atquant/model_io.hpp"
#include "atquant/semantics.hpp"
#include "testing/corpus.hpp"
#include "testing/generators.hpp"

namespace atquant {
namespace {

using testing::AttackOf;
using testing::Before;
using testing::Corpus;
using testing::Typed;
using Clock = std::chrono::steady_clock;

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void Expect(bool ok, const std::string& what) {
    if (!ok) ok_ = false;
    details_.push_back((ok ? "ok    " : "FAIL  ") + what);
  }
  void Note(const std::string& what) { details_.push_back("      " + what); }
  bool ok() const { return ok_; }

  void Report(std::ostream& out) const {
    out << (ok_ ? "PASS" : "FAIL") << " " << name_ << "\n";
    for (const auto& d : details_) out << "    " << d << "\n";
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Show(const MetricValue& v) { return ToString(v); }

AnalysisResult Run(const ModelDocument& doc, const std::string& attribution,
                   const DynamicAttributeDomain& domain,
                   Algorithm algorithm = Algorithm::kAuto,
                   std::optional<std::size_t> k = std::nullopt) {
  const Attribution alpha = Typed(doc, attribution, domain);
  AnalysisRequest req;
  req.tree = &doc.tree;
  req.attribution = &alpha;
  req.domain = &domain;
  req.algorithm = algorithm;
  req.k = k;
  return Analyze(req);
}

void GoldenValue(Criterion& c, const std::string& model,
                 const std::string& attribution, const std::string& domain,
                 Algorithm algorithm, const MetricValue& expected,
                 const std::string& expected_algorithm) {
  const auto start = Clock::now();
  const auto doc = Corpus(model);
  const auto result = Run(doc, attribution, Builtin(domain), algorithm);
  const double secs = Seconds(start);
  std::ostringstream what;
  what << model << " " << domain << " = " << Show(result.value) << " via "
       << result.algorithm << " (expected " << Show(expected) << " via "
       << expected_algorithm << ", " << secs << " s)";
  c.Expect(result.value == expected && result.algorithm == expected_algorithm &&
               secs < 1.0,
           what.str());
}

Criterion GoldenValues() {
  Criterion c("1 golden metric values");
  const auto nat = [](std::uint64_t v) { return MetricValue(ExtendedNatural(v)); };
  const auto prob = [](long n, unsigned long d) {
    return MetricValue(Probability::FromRatio(n, d));
  };
  GoldenValue(c, "ts", "time", "min-time-par", Algorithm::kAuto, nat(1), "bu");
  GoldenValue(c, "ts", "time", "min-time-seq", Algorithm::kAuto, nat(1), "bu");
  GoldenValue(c, "ts", "prob", "prob-max", Algorithm::kAuto, prob(7, 100), "bu");
  GoldenValue(c, "shared", "cost", "min-cost", Algorithm::kBdd, nat(1), "bdd");
  GoldenValue(c, "shared", "cost", "min-cost", Algorithm::kAuto, nat(1), "bdd");
  GoldenValue(c, "shared", "prob", "prob-max", Algorithm::kAuto, prob(6, 100), "bdd");
  GoldenValue(c, "td", "time", "min-time-par", Algorithm::kAuto, nat(15), "oracle");
  GoldenValue(c, "td", "skill", "min-skill", Algorithm::kAuto, nat(10), "oracle");
  GoldenValue(c, "t3", "cost", "min-cost", Algorithm::kAuto, nat(13), "oracle");

  const auto start = Clock::now();
  const auto doc = Corpus("shared");
  const auto result = Run(doc, "cost", Builtin("min-cost"), Algorithm::kAuto, 2);
  const double secs = Seconds(start);
  std::string got;
  for (const auto& r : result.ranked) {
    got += "(" + Show(r.value) + "," + FormatAttack(r.attack, doc.tree) + ")";
  }
  const bool ok = result.ranked.size() == 2 &&
                  result.ranked[0].value == nat(1) &&
                  result.ranked[0].attack == AttackOf(doc.tree, {"b"}) &&
                  result.ranked[1].value == nat(7) &&
                  result.ranked[1].attack == AttackOf(doc.tree, {"a", "c"});
  c.Expect(ok && secs < 1.0, "shared k_top(2) = " + got +
                                 " (expected (1,{b})(7,{a,c}))");
  return c;
}

Criterion SemanticsGoldens() {
  Criterion c("2 semantics goldens");
  const auto ts = Corpus("ts");
  const AttackSuite ts_expected{AttackOf(ts.tree, {"n"}),
                                AttackOf(ts.tree, {"t", "p"})};
  c.Expect(MinimalAttacksStatic(ts.tree) == ts_expected,
           "[[Ts]] = {{n},{t,p}}");

  const auto td = Corpus("td");
  const std::set<PosetAttack> td_expected{
      {AttackOf(td.tree, {"w", "cc"}), {Before(td.tree, "w", "cc")}},
      {AttackOf(td.tree, {"ff", "w"}), {}}};
  c.Expect(MinimalAttacksDynamic(td.tree) == td_expected,
           "[[Td]] = {({w,cc},{w<cc}), ({ff,w},{})}");

  const Order td_graph{Before(td.tree, "w", "cc")};
  c.Expect(BuildOrderingGraph(td.tree).edges == td_graph,
           "ordering graph of Td = {w -> cc}");
  return c;
}

bool IsCycleWitness(const AttackTree& tree, const std::vector<NodeId>& cycle) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) return false;
  const Order edges = BuildOrderingGraph(tree).edges;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    if (!edges.count({cycle[i], cycle[i + 1]})) return false;
  }
  return true;
}

Criterion WellFormednessGoldens() {
  Criterion c("3 well-formedness goldens");
  for (const char* name : {"sand_aba", "sand_and_and"}) {
    const auto doc = Corpus(name);
    const auto wf = CheckWellFormed(doc.tree);
    c.Expect(!wf.well_formed && IsCycleWitness(doc.tree, wf.cycle),
             std::string(name) + " rejected, witness " +
                 FormatCycle(wf.cycle, doc.tree));
  }
  for (const char* name : {"t3", "td"}) {
    const auto doc = Corpus(name);
    c.Expect(CheckWellFormed(doc.tree).well_formed,
             std::string(name) + " accepted");
  }
  return c;
}

Criterion NegativeControl() {
  Criterion c("4 naive bottom-up on a DAG is wrong and never dispatched");
  const auto doc = Corpus("shared");
  const auto domain = Builtin("min-cost");
  const auto alpha = Typed(doc, "cost", domain);
  const MetricValue naive = BottomUpUnchecked(doc.tree, alpha, domain);
  const MetricValue oracle = OracleMetricStatic(doc.tree, alpha, domain);
  c.Expect(naive == MetricValue(ExtendedNatural(2)) &&
               oracle == MetricValue(ExtendedNatural(1)),
           "shared naive fold = " + Show(naive) + ", oracle = " + Show(oracle));

  std::mt19937_64 rng(4);
  std::size_t dispatched_bu = 0;
  const std::size_t kTrials = 200;
  for (std::size_t i = 0; i < kTrials; ++i) {
    testing::TreeShape shape;
    shape.sand = i % 2 ? 0.3 : 0.0;
    const AttackTree t = testing::RandomDag(rng, shape);
    if (shape.sand > 0 && !CheckWellFormed(t).well_formed) continue;
    const auto alpha_r = testing::RandomAttribution(rng, t, domain);
    AnalysisRequest req;
    req.tree = &t;
    req.attribution = &alpha_r;
    req.domain = &domain;
    const auto result = Analyze(req);
    if (result.algorithm == "bu" || result.algorithm == "bu-dat") {
      ++dispatched_bu;
    }
  }
  c.Expect(Run(doc, "cost", domain).algorithm == "bdd",
           "shared dispatched to bdd");
  c.Expect(dispatched_bu == 0, "bottom-up chosen for " +
                                   std::to_string(dispatched_bu) +
                                   " random DAGs");
  return c;
}

std::vector<DynamicAttributeDomain> StaticSemirings() {
  std::vector<DynamicAttributeDomain> out;
  for (const auto& name : BuiltinNames()) {
    auto d = Builtin(name);
    if (d.is_semiring) out.push_back(d);
  }
  out.push_back(Builtin("pareto(min-cost,min-time-par)"));
  return out;
}

struct SuiteStats {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::string first;
};

void Compare(SuiteStats& s, const MetricValue& got, const MetricValue& want,
             const std::string& where) {
  ++s.cases;
  if (got == want) return;
  if (s.mismatches++ == 0) {
    s.first = where + ": got " + Show(got) + ", oracle " + Show(want);
  }
}

struct BddChecks {
  std::size_t bdds = 0;
  std::size_t failures = 0;
  std::string first;

  void Check(const Bdd& raw, const Bdd& min, const AttackTree& t) {
    bdds += 2;
    std::string problem;
    const auto v_raw = Validate(raw);
    const auto v_min = Validate(min);
    if (!v_raw.ok) problem = "raw: " + v_raw.problems.front();
    if (!v_min.ok) problem = "minimised: " + v_min.problems.front();
    if (!HasMinimalShape(min)) problem = "minimised BDD has a forbidden edge";
    if (TopPaths(min) != MinimalAttacksStatic(t)) {
      problem = "top paths differ from minimal attacks";
    }
    if (!problem.empty() && failures++ == 0) first = problem;
  }
};

BddChecks g_bdd_checks;

Criterion OracleEquivalence() {
  Criterion c("5 bottom-up and BDD algorithms agree with the oracle");
  const auto start = Clock::now();
  const auto semirings = StaticSemirings();
  constexpr std::size_t kCases = 500;
  std::mt19937_64 rng(5);

  SuiteStats tree_sat;
  for (std::size_t i = 0; i < kCases; ++i) {
    const AttackTree t = testing::RandomTree(rng, {});
    for (const auto& d : semirings) {
      const auto alpha = testing::RandomAttribution(rng, t, d);
      Compare(tree_sat, BuSat(t, t.root(), alpha, d),
              OracleMetricStatic(t, alpha, d),
              "tree SAT #" + std::to_string(i) + " " + d.name);
    }
    const auto order = testing::RandomOrder(rng, t);
    const Bdd raw = FromStructureFunction(t, order);
    g_bdd_checks.Check(raw, Minimise(raw), t);
  }
  c.Expect(tree_sat.mismatches == 0,
           "tree SATs: " + std::to_string(kCases) + " trees, " +
               std::to_string(tree_sat.cases) + " comparisons, " +
               std::to_string(tree_sat.mismatches) + " mismatches " +
               tree_sat.first);

  SuiteStats dag_sat;
  for (std::size_t i = 0; i < kCases; ++i) {
    const AttackTree t = testing::RandomDag(rng, {});
    for (int o = 0; o < 3; ++o) {
      const auto order = testing::RandomOrder(rng, t);
      const Bdd raw = FromStructureFunction(t, order);
      const Bdd min = Minimise(raw);
      g_bdd_checks.Check(raw, min, t);
      for (const auto& d : semirings) {
        const auto alpha = testing::RandomAttribution(rng, t, d);
        Compare(dag_sat, BuBdd(min, alpha, d), OracleMetricStatic(t, alpha, d),
                "DAG SAT #" + std::to_string(i) + " order " +
                    std::to_string(o) + " " + d.name);
      }
    }
  }
  c.Expect(dag_sat.mismatches == 0,
           "DAG SATs: " + std::to_string(kCases) + " DAGs x 3 orders, " +
               std::to_string(dag_sat.cases) + " comparisons, " +
               std::to_string(dag_sat.mismatches) + " mismatches " +
               dag_sat.first);

  std::map<std::string, SuiteStats> dat;
  std::vector<DynamicAttributeDomain> dynamic;
  for (const auto& name : BuiltinNames()) {
    auto d = Builtin(name);
    if (d.is_semiring_dynamic) dynamic.push_back(d);
  }
  for (std::size_t i = 0; i < kCases; ++i) {
    const AttackTree t = testing::RandomWellFormed(rng, {});
    for (const auto& d : dynamic) {
      const auto alpha = testing::RandomAttribution(rng, t, d);
      Compare(dat[d.name], BuDat(t, t.root(), alpha, d),
              OracleMetricDynamic(t, alpha, d),
              "tree DAT #" + std::to_string(i));
    }
  }
  for (const auto& d : dynamic) {
    const auto& s = dat[d.name];
    c.Expect(s.mismatches == 0,
             "tree DATs, " + d.name + ": " + std::to_string(s.cases) +
                 " trees, " + std::to_string(s.mismatches) + " mismatches " +
                 s.first);
  }
  {
    // Smallest disagreement: one Hasse component holding a parallel pair.
    const AttackTree t = testing::TreeFromText(
        "toplevel \"r\"; \"r\" sand \"ab\" \"c\"; \"ab\" and \"a\" \"b\";"
        "\"a\" bas; \"b\" bas; \"c\" bas;");
    const auto d = Builtin("min-time-par");
    const Attribution alpha{{t.Lookup("a"), ExtendedNatural(1)},
                            {t.Lookup("b"), ExtendedNatural(2)},
                            {t.Lookup("c"), ExtendedNatural(0)}};
    c.Note("SAND(AND(a,b),c), a=1 b=2 c=0, min-time-par: bu_dat = " +
           Show(BuDat(t, t.root(), alpha, d)) + ", oracle = " +
           Show(OracleMetricDynamic(t, alpha, d)) +
           " (definition sums a component, bottom-up takes max(a,b)+c)");
  }
  const double secs = Seconds(start);
  c.Expect(secs < 300.0, "suite runtime " + std::to_string(secs) + " s");
  return c;
}

Criterion BddInvariants() {
  Criterion c("6 BDD invariants on every suite BDD");
  std::mt19937_64 rng(6);
  for (const char* name : {"ts", "shared"}) {
    const auto doc = Corpus(name);
    for (int o = 0; o < 4; ++o) {
      const Bdd raw = FromStructureFunction(
          doc.tree, o == 0 ? DefaultOrder(doc.tree)
                           : testing::RandomOrder(rng, doc.tree));
      g_bdd_checks.Check(raw, Minimise(raw), doc.tree);
    }
  }
  c.Expect(g_bdd_checks.bdds > 0 && g_bdd_checks.failures == 0,
           std::to_string(g_bdd_checks.bdds) + " BDDs checked, " +
               std::to_string(g_bdd_checks.failures) + " failures " +
               g_bdd_checks.first);
  return c;
}

Criterion AlgebraSuite() {
  Criterion c("7 semiring laws on builtin domains");
  std::mt19937_64 rng(7);
  std::vector<DynamicAttributeDomain> domains;
  for (const auto& name : BuiltinNames()) domains.push_back(Builtin(name));
  domains.push_back(Builtin("pareto(min-cost,min-time-par)"));
  domains.push_back(Builtin("pareto(min-cost,prob-max)"));
  for (const auto& d : domains) {
    if (!d.is_semiring) continue;
    const auto samples = testing::RandomTriples(rng, d, 1000);
    const AttributeDomain& as_static = d;
    const auto report = CheckSemiringLaws(as_static, samples);
    c.Expect(report.AllHold(), d.name + ": semiring laws on 1000 triples");
    if (d.is_semiring_dynamic) {
      const auto dyn = CheckSemiringLaws(d, samples);
      c.Expect(dyn.AllHold(), d.name + ": dynamic semiring laws");
    }
  }

  const auto ctd = Builtin("cost-to-defend");
  const auto n = [](std::uint64_t v) { return MetricValue(ExtendedNatural(v)); };
  const AttributeDomain& ctd_static = ctd;
  const auto report = CheckSemiringLaws(ctd_static, {{n(1), n(2), n(3)}});
  const LawResult* law = report.Find("and-over-or");
  c.Expect(!ctd.is_semiring && !report.SemiringHolds() && law && !law->holds &&
               law->lhs == n(1) && law->rhs == n(2),
           "cost-to-defend flagged non-semiring: 1 min (2+3) = " +
               (law && law->lhs ? Show(*law->lhs) : "?") +
               " but (1 min 2)+(1 min 3) = " +
               (law && law->rhs ? Show(*law->rhs) : "?"));
  const auto random_report =
      CheckSemiringLaws(ctd_static, testing::RandomTriples(rng, ctd, 1000));
  c.Expect(!random_report.SemiringHolds(),
           "cost-to-defend fails on random triples too");
  return c;
}

Criterion TotalProbability() {
  Criterion c("8 total attack probability on Ts");
  const auto doc = Corpus("ts");
  const auto domain = Builtin("prob-max");
  const auto alpha = Typed(doc, "prob", domain);
  const auto bas = BasOf(doc.tree);
  mpq_class brute = 0;
  for (std::uint32_t mask = 0; mask < (1u << bas.size()); ++mask) {
    Attack a;
    mpq_class weight = 1;
    for (std::size_t i = 0; i < bas.size(); ++i) {
      const mpq_class p = std::get<Probability>(alpha.at(bas[i])).value();
      if (mask >> i & 1) {
        a.insert(bas[i]);
        weight *= p;
      } else {
        weight *= 1 - p;
      }
    }
    if (StructureFunction(doc.tree, doc.tree.root(), a)) brute += weight;
  }
  const Probability got = TotalProbabilityTree(doc.tree, alpha);
  c.Expect(got.value() == brute && brute == mpq_class(15767, 200000),
           "total = " + got.ToString() + ", brute force = " + brute.get_str());
  return c;
}

Criterion Coherence() {
  Criterion c("9 coherence of well-formed dynamic trees");
  std::mt19937_64 rng(9);
  std::vector<AttackTree> corpus{Corpus("td").tree, Corpus("t3").tree,
                                 Corpus("ts").tree};
  for (int i = 0; i < 50; ++i) corpus.push_back(testing::RandomWellFormed(rng, {}));
  for (int i = 0; i < 50; ++i) {
    testing::TreeShape shape;
    shape.sand = 0.4;
    for (;;) {
      AttackTree t = testing::RandomDag(rng, shape);
      if (CheckWellFormed(t).well_formed) {
        corpus.push_back(std::move(t));
        break;
      }
    }
  }
  std::size_t trials = 0, violations = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto report = CheckCoherence(corpus[i], 100, 900 + i);
    trials += report.trials;
    violations += report.violations.size();
  }
  c.Expect(violations == 0, std::to_string(corpus.size()) + " trees, " +
                                std::to_string(trials) + " trials, " +
                                std::to_string(violations) + " violations");
  return c;
}

AttackTree BalancedTree(std::size_t nodes) {
  std::vector<NodeSpec> specs(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    specs[i].label = "v" + std::to_string(i);
    const std::size_t l = 2 * i + 1, r = 2 * i + 2;
    if (l >= nodes) {
      specs[i].type = NodeType::kBas;
      continue;
    }
    specs[i].type = i % 2 ? NodeType::kAnd : NodeType::kOr;
    specs[i].children.push_back("v" + std::to_string(l));
    if (r < nodes) specs[i].children.push_back("v" + std::to_string(r));
  }
  return AttackTree::Build(specs, "v0");
}

Criterion Scalability() {
  Criterion c("10 scalability smoke");
  const AttackTree t = BalancedTree(100000);
  const auto domain = Builtin("min-cost");
  std::mt19937_64 rng(10);
  const auto alpha = testing::RandomAttribution(rng, t, domain);
  const auto start = Clock::now();
  const MetricValue v = BuSat(t, t.root(), alpha, domain);
  const double secs = Seconds(start);
  c.Expect(secs < 1.0, "BU_SAT on " + std::to_string(t.size()) +
                           " nodes: " + std::to_string(secs) + " s, value " +
                           Show(v));

  std::size_t mismatched = 0, checked = 0;
  for (int i = 0; i < 200; ++i) {
    const AttackTree dag = testing::RandomDag(rng, {});
    const Bdd min = Minimise(FromStructureFunction(dag, testing::RandomOrder(rng, dag)));
    const auto alpha_d = testing::RandomAttribution(rng, dag, domain);
    BuBddStats stats;
    BuBdd(min, alpha_d, domain, &stats);
    ++checked;
    if (stats.visited_nodes != min.NodeCount()) ++mismatched;
  }
  c.Expect(mismatched == 0, "BUBDD visits == BDD node count on " +
                                std::to_string(checked) + " BDDs (" +
                                std::to_string(mismatched) + " differ)");
  return c;
}

}  // namespace
}  // namespace atquant

int main() {
  using namespace atquant;
  std::vector<std::function<Criterion()>> criteria{
      GoldenValues,      SemanticsGoldens, WellFormednessGoldens,
      NegativeControl,   OracleEquivalence, BddInvariants,
      AlgebraSuite,      TotalProbability, Coherence,
      Scalability};
  bool all = true;
  for (const auto& run : criteria) {
    try {
      Criterion c = run();
      c.Report(std::cout);
      all = all && c.ok();
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion aborted: " << e.what() << "\n";
      all = false;
    }
  }
  return all ? 0 : 1;
}
