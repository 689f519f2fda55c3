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

// Command-line front end.
//
// Exit codes:
//   0  success
//   1  parse, validation or analysis error
//   2  ill-formed dynamic tree
//   3  oracle budget exceeded

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "atquant/analysis.hpp"
#include "atquant/attack_tree.hpp"
#include "atquant/bdd.hpp"
#include "atquant/domains.hpp"
#include "atquant/error.hpp"
#include "atquant/model_io.hpp"
#include "atquant/semantics.hpp"
#include "json.hpp"

namespace {

using atquant::ErrorCode;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIllFormed = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string model;
  std::string domain;
  std::string attribution;
  std::string algorithm = "auto";
  std::size_t k = 0;
  std::string order;
  std::optional<std::size_t> budget;
  std::string format = "text";
  std::string output;
  bool timings = false;
  std::string what = "at";
};

std::size_t DefaultBudget() {
  if (const char* env = std::getenv("ATQUANT_BUDGET")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed ATQUANT_BUDGET='" << env
                << "'\n";
    }
  }
  return atquant::kDefaultOracleBudget;
}

atquant::OracleOptions OracleFrom(const Options& opt) {
  atquant::OracleOptions oracle;
  oracle.budget = opt.budget.value_or(DefaultBudget());
  if (oracle.budget > atquant::kDefaultOracleBudget) {
    std::cerr << "note: enumeration budget " << oracle.budget
              << " BAS; running time doubles with every extra BAS\n";
  }
  return oracle;
}

atquant::OutputFormat FormatFrom(const Options& opt) {
  return opt.format == "json" ? atquant::OutputFormat::kJson
                              : atquant::OutputFormat::kText;
}

std::optional<atquant::VarOrder> OrderFrom(const atquant::ModelDocument& doc,
                                           const Options& opt) {
  if (opt.order.empty()) return std::nullopt;
  auto it = doc.orders.find(opt.order);
  if (it == doc.orders.end()) {
    throw atquant::Error(ErrorCode::kOrderMismatch,
                         "model has no order named '" + opt.order + "'");
  }
  return it->second;
}

const atquant::RawAttribution& AttributionFrom(
    const atquant::ModelDocument& doc, const Options& opt) {
  if (opt.attribution.empty()) {
    if (doc.attributions.size() == 1) return doc.attributions.begin()->second;
    throw atquant::Error(
        ErrorCode::kIncompleteAttribution,
        doc.attributions.empty()
            ? "model has no attribution"
            : "model has several attributions; pick one with --attribution");
  }
  auto it = doc.attributions.find(opt.attribution);
  if (it == doc.attributions.end()) {
    throw atquant::Error(ErrorCode::kIncompleteAttribution,
                         "model has no attribution named '" +
                             opt.attribution + "'");
  }
  return it->second;
}

std::string ShapeName(const atquant::StructureKind& kind) {
  return kind.shape == atquant::Shape::kTree ? "tree" : "DAG";
}

std::string DynamicsName(const atquant::StructureKind& kind) {
  return kind.dynamics == atquant::Dynamics::kStatic ? "static" : "dynamic";
}

json Labels(const std::vector<atquant::NodeId>& ids,
            const atquant::AttackTree& tree) {
  json out = json::array();
  for (atquant::NodeId id : ids) out.push_back(tree.label(id));
  return out;
}

int RunCheck(const Options& opt, std::string& out) {
  const auto doc = atquant::LoadModel(opt.model);
  const auto kind = atquant::Classify(doc.tree);
  std::optional<atquant::WellFormedness> wf;
  if (kind.dynamics == atquant::Dynamics::kDynamic) {
    wf = atquant::CheckWellFormed(doc.tree);
  }
  if (opt.format == "json") {
    json j;
    j["shape"] = ShapeName(kind);
    j["dynamics"] = DynamicsName(kind);
    j["valid"] = true;
    j["well_formed"] = !wf || wf->well_formed;
    if (wf && !wf->well_formed) j["cycle"] = Labels(wf->cycle, doc.tree);
    out = j.dump() + "\n";
  } else {
    out = ShapeName(kind) + ", " + DynamicsName(kind);
    if (wf) {
      out += wf->well_formed ? ", well-formed"
                             : ", ill-formed: " +
                                   atquant::FormatCycle(wf->cycle, doc.tree);
    }
    out += "\n";
  }
  return wf && !wf->well_formed ? kExitIllFormed : kExitOk;
}

int RunSemantics(const Options& opt, std::string& out) {
  const auto doc = atquant::LoadModel(opt.model);
  const auto& tree = doc.tree;
  const auto oracle = OracleFrom(opt);
  const bool json_out = opt.format == "json";
  json items = json::array();
  std::vector<std::string> texts;
  if (atquant::Classify(tree).dynamics == atquant::Dynamics::kStatic) {
    const auto suite = atquant::MinimalAttacksStatic(tree, oracle);
    for (const auto& attack : atquant::SortedAttacks(suite, tree)) {
      texts.push_back(atquant::FormatAttack(attack, tree));
      json a;
      a["attack"] = Labels({attack.begin(), attack.end()}, tree);
      items.push_back(std::move(a));
    }
  } else {
    const auto posets = atquant::MinimalAttacksDynamic(tree, oracle);
    atquant::AttackSuite suite;
    for (const auto& p : posets) suite.insert(p.attack);
    // Ordered posets first, then by attack in BAS order.
    std::vector<const atquant::PosetAttack*> sorted;
    for (const auto& attack : atquant::SortedAttacks(suite, tree)) {
      for (const auto& p : posets) {
        if (p.attack == attack) sorted.push_back(&p);
      }
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto* a, const auto* b) {
                       return a->order.size() > b->order.size();
                     });
    for (const auto* p : sorted) {
      texts.push_back(atquant::FormatPoset(*p, tree));
      json a;
      a["attack"] = Labels({p->attack.begin(), p->attack.end()}, tree);
      json order = json::array();
      for (const auto& [x, y] : p->order) {
        order.push_back(json::array({tree.label(x), tree.label(y)}));
      }
      a["order"] = std::move(order);
      items.push_back(std::move(a));
    }
  }
  if (json_out) {
    json j;
    j["attacks"] = std::move(items);
    out = j.dump() + "\n";
  } else {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      out += (i ? "; " : "") + texts[i];
    }
    out += "\n";
  }
  return kExitOk;
}

int RunMetric(const Options& opt, bool ktop, std::string& out) {
  const auto doc = atquant::LoadModel(opt.model);
  const auto domain = atquant::Builtin(opt.domain);
  const auto attribution = atquant::ToAttribution(AttributionFrom(doc, opt),
                                                   domain, doc.tree);
  atquant::AnalysisRequest req;
  req.tree = &doc.tree;
  req.attribution = &attribution;
  req.domain = &domain;
  auto algorithm = atquant::AlgorithmFromString(opt.algorithm);
  if (!algorithm) {
    throw atquant::Error(ErrorCode::kSyntaxError,
                         "unknown algorithm '" + opt.algorithm + "'");
  }
  req.algorithm = *algorithm;
  if (ktop) req.k = opt.k;
  req.order = OrderFrom(doc, opt);
  req.oracle = OracleFrom(opt);
  const auto result = atquant::Analyze(req);
  out = atquant::EmitResult(result, doc.tree, FormatFrom(opt), opt.timings);
  return kExitOk;
}

int RunDump(const Options& opt, std::string& out) {
  const auto doc = atquant::LoadModel(opt.model);
  if (opt.what == "at") {
    out = atquant::EmitDot(doc.tree);
    return kExitOk;
  }
  const auto order = OrderFrom(doc, opt).value_or(atquant::DefaultOrder(doc.tree));
  auto bdd = atquant::FromStructureFunction(doc.tree, order);
  if (opt.what == "bdd-min") bdd = atquant::Minimise(bdd);
  out = atquant::EmitDot(bdd, doc.tree);
  return kExitOk;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIllFormed: return kExitIllFormed;
    case ErrorCode::kBudgetExceeded: return kExitBudget;
    default: return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative analysis of attack trees"};
  app.require_subcommand(1);
  Options opt;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("model", opt.model, "Model file")->required();
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", opt.output, "Write results to this file");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", opt.budget,
                    "Largest BAS count for exhaustive enumeration");
  };
  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--domain", opt.domain, "Attribute domain")->required();
    sub->add_option("--attribution", opt.attribution, "Attribution name");
    sub->add_option("--order", opt.order, "BDD variable order name");
    sub->add_flag("--timings", opt.timings, "Report wall-clock time");
    add_budget(sub);
  };

  auto* check = app.add_subcommand("check", "Classify and validate a model");
  add_model(check);
  auto* semantics =
      app.add_subcommand("semantics", "Print the minimal attack suite");
  add_model(semantics);
  add_budget(semantics);
  auto* metric = app.add_subcommand("metric", "Compute a security metric");
  add_model(metric);
  add_metric(metric);
  metric->add_option("--algorithm", opt.algorithm, "auto|bu|bdd|oracle")
      ->check(CLI::IsMember({"auto", "bu", "bdd", "oracle"}));
  auto* ktop = app.add_subcommand("ktop", "List the k best attacks");
  add_model(ktop);
  add_metric(ktop);
  ktop->add_option("--k", opt.k, "Number of attacks")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* dump = app.add_subcommand("dump", "Emit Graphviz DOT");
  add_model(dump);
  dump->add_option("--what", opt.what, "at|bdd|bdd-min")
      ->check(CLI::IsMember({"at", "bdd", "bdd-min"}));
  dump->add_option("--order", opt.order, "BDD variable order name");

  CLI11_PARSE(app, argc, argv);

  std::string out;
  int status = kExitOk;
  try {
    if (check->parsed()) {
      status = RunCheck(opt, out);
    } else if (semantics->parsed()) {
      status = RunSemantics(opt, out);
    } else if (metric->parsed()) {
      status = RunMetric(opt, false, out);
    } else if (ktop->parsed()) {
      status = RunMetric(opt, true, out);
    } else {
      status = RunDump(opt, out);
    }
  } catch (const atquant::ParseError& e) {
    std::cerr << opt.model << ":" << e.what() << " ["
              << atquant::ToString(e.code()) << "]\n";
    return ExitFor(e.code());
  } catch (const atquant::Error& e) {
    std::cerr << "error: " << e.what() << " [" << atquant::ToString(e.code())
              << "]\n";
    if (e.code() == ErrorCode::kBudgetExceeded) {
      std::cerr << "hint: pass --budget <n> or set ATQUANT_BUDGET; cost grows "
                   "as 2^n in the number of BAS\n";
    }
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  if (opt.output.empty()) {
    std::cout << out;
  } else {
    std::ofstream file(opt.output, std::ios::binary);
    if (!(file << out)) {
      std::cerr << "error: cannot write '" << opt.output << "'\n";
      return kExitError;
    }
  }
  return status;
}
