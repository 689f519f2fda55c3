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

#include "atquant/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "atquant/error.hpp"
#include "json.hpp"

namespace atquant {
namespace {

enum class TokenKind { kString, kWord, kNumber, kPunct, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    SkipSpaceAndComments();
    Token t{TokenKind::kEnd, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '"') {
      Advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') break;
        t.text += text_[pos_];
        Advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '"') {
        throw ParseError(ErrorCode::kSyntaxError, "unterminated string",
                         t.line, t.column);
      }
      Advance();
      t.kind = TokenKind::kString;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '-')) {
        t.text += text_[pos_];
        Advance();
      }
      t.kind = TokenKind::kWord;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      TakeDigits(t.text);
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) {
        t.text += text_[pos_];
        Advance();
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          throw ParseError(ErrorCode::kSyntaxError,
                           "malformed number '" + t.text + "'", t.line,
                           t.column);
        }
        TakeDigits(t.text);
      }
      t.kind = TokenKind::kNumber;
      return t;
    }
    if (std::string_view(";{}=<(),").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      Advance();
      t.kind = TokenKind::kPunct;
      return t;
    }
    throw ParseError(ErrorCode::kSyntaxError,
                     std::string("unexpected character '") + c + "'", t.line,
                     t.column);
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void TakeDigits(std::string& out) {
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_];
      Advance();
    }
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        Advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

ExactScalar ParseNumber(const Token& t) {
  ExactScalar s;
  const std::string& text = t.text;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    mpz_class num(text.substr(0, slash), 10);
    mpz_class den(text.substr(slash + 1), 10);
    if (den == 0) {
      throw ParseError(ErrorCode::kSyntaxError, "zero denominator", t.line,
                       t.column);
    }
    s.value = mpq_class(num, den);
    s.value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    s.value = mpq_class(mpz_class(digits, 10), den);
    s.value.canonicalize();
  } else {
    s.value = mpq_class(mpz_class(text, 10));
  }
  return s;
}

struct Located {
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { Shift(); }

  ModelDocument Parse() {
    while (look_.kind != TokenKind::kEnd) Statement();
    return Finish();
  }

 private:
  void Shift() { look_ = lexer_.Next(); }

  [[noreturn]] void Fail(const std::string& message, const Token& at,
                         ErrorCode code = ErrorCode::kSyntaxError) {
    throw ParseError(code, message, at.line, at.column);
  }

  Token Expect(TokenKind kind, std::string_view what) {
    if (look_.kind != kind) {
      Fail("expected " + std::string(what) + ", found " + Describe(look_),
           look_);
    }
    Token t = look_;
    Shift();
    return t;
  }

  void ExpectPunct(char c) {
    if (look_.kind != TokenKind::kPunct || look_.text[0] != c) {
      Fail(std::string("expected '") + c + "', found " + Describe(look_),
           look_);
    }
    Shift();
  }

  bool AtPunct(char c) const {
    return look_.kind == TokenKind::kPunct && look_.text[0] == c;
  }

  static std::string Describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::kEnd: return "end of file";
      case TokenKind::kString: return "\"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }

  void Statement() {
    if (look_.kind == TokenKind::kWord && look_.text == "toplevel") {
      Token kw = look_;
      Shift();
      Token label = Expect(TokenKind::kString, "root label");
      if (root_) Fail("toplevel declared twice", kw, ErrorCode::kDuplicateDefinition);
      root_ = label;
      ExpectPunct(';');
    } else if (look_.kind == TokenKind::kWord && look_.text == "attribution") {
      Shift();
      AttributionBlock();
    } else if (look_.kind == TokenKind::kWord && look_.text == "order") {
      Shift();
      OrderStatement();
    } else if (look_.kind == TokenKind::kString) {
      NodeStatement();
    } else {
      Fail("expected a statement, found " + Describe(look_), look_);
    }
  }

  void NodeStatement() {
    Token label = look_;
    Shift();
    Token type_tok = Expect(TokenKind::kWord, "node type");
    auto type = NodeTypeFromString(type_tok.text);
    if (!type) Fail("unknown node type '" + type_tok.text + "'", type_tok);
    if (node_index_.count(label.text)) {
      Fail("node '" + label.text + "' is defined twice", label,
           ErrorCode::kDuplicateDefinition);
    }
    NodeSpec spec{label.text, *type, {}};
    while (look_.kind == TokenKind::kString) {
      spec.children.push_back(look_.text);
      references_.push_back(look_);
      Shift();
    }
    if (*type == NodeType::kBas && !spec.children.empty()) {
      Fail("basic attack step '" + label.text + "' has children", label,
           ErrorCode::kBasWithChildren);
    }
    if (*type != NodeType::kBas && spec.children.empty()) {
      Fail("gate '" + label.text + "' has no children", label,
           ErrorCode::kGateWithoutChildren);
    }
    ExpectPunct(';');
    node_index_.emplace(label.text, specs_.size());
    specs_.push_back(std::move(spec));
  }

  RawValue Value() {
    RawValue v;
    if (AtPunct('(')) {
      Shift();
      v.tuple = true;
      v.components.push_back(Scalar());
      while (AtPunct(',')) {
        Shift();
        v.components.push_back(Scalar());
      }
      ExpectPunct(')');
    } else {
      v.components.push_back(Scalar());
    }
    return v;
  }

  ExactScalar Scalar() {
    if (look_.kind == TokenKind::kWord && look_.text == "inf") {
      Shift();
      return ExactScalar{true, 0};
    }
    Token t = Expect(TokenKind::kNumber, "a number or 'inf'");
    return ParseNumber(t);
  }

  void AttributionBlock() {
    Token name = Expect(TokenKind::kString, "attribution name");
    if (attributions_.count(name.text)) {
      Fail("attribution '" + name.text + "' is defined twice", name,
           ErrorCode::kDuplicateDefinition);
    }
    auto& entries = attributions_[name.text];
    entries.where = {name.line, name.column};
    ExpectPunct('{');
    while (!AtPunct('}')) {
      Token bas = Expect(TokenKind::kString, "BAS label or '}'");
      ExpectPunct('=');
      RawValue v = Value();
      ExpectPunct(';');
      for (const auto& [existing, value] : entries.values) {
        if (existing.text == bas.text) {
          Fail("'" + bas.text + "' is given two values", bas,
               ErrorCode::kDuplicateDefinition);
        }
      }
      entries.values.emplace_back(bas, std::move(v));
    }
    ExpectPunct('}');
  }

  void OrderStatement() {
    Token name = Expect(TokenKind::kString, "order name");
    if (orders_.count(name.text)) {
      Fail("order '" + name.text + "' is defined twice", name,
           ErrorCode::kDuplicateDefinition);
    }
    ExpectPunct('=');
    auto& seq = orders_[name.text];
    seq.where = {name.line, name.column};
    seq.items.push_back(Expect(TokenKind::kString, "BAS label"));
    while (AtPunct('<')) {
      Shift();
      seq.items.push_back(Expect(TokenKind::kString, "BAS label"));
    }
    ExpectPunct(';');
  }

  ModelDocument Finish() {
    if (!root_) {
      Fail("missing 'toplevel' declaration", look_, ErrorCode::kNoRoot);
    }
    for (const Token& ref : references_) {
      if (!node_index_.count(ref.text)) {
        Fail("reference to undefined node '" + ref.text + "'", ref,
             ErrorCode::kDanglingReference);
      }
    }
    std::optional<AttackTree> tree;
    try {
      tree = AttackTree::Build(specs_, root_->text);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.code(), e.what(), root_->line, root_->column);
    }

    ModelDocument doc{*std::move(tree), {}, {}};
    const std::vector<NodeId> bas = BasOf(doc.tree);
    for (auto& [name, block] : attributions_) {
      RawAttribution raw;
      for (auto& [tok, value] : block.values) {
        auto id = doc.tree.Find(tok.text);
        if (!id || !doc.tree.IsBas(*id)) {
          Fail("'" + tok.text + "' is not a basic attack step", tok,
               ErrorCode::kUnknownNode);
        }
        raw.emplace(*id, std::move(value));
      }
      for (NodeId a : bas) {
        if (!raw.count(a)) {
          throw ParseError(ErrorCode::kIncompleteAttribution,
                           "attribution '" + name + "' has no value for '" +
                               doc.tree.label(a) + "'",
                           block.where.line, block.where.column);
        }
      }
      doc.attributions.emplace(name, std::move(raw));
    }
    for (auto& [name, seq] : orders_) {
      std::vector<NodeId> ids;
      for (const Token& tok : seq.items) {
        auto id = doc.tree.Find(tok.text);
        if (!id || !doc.tree.IsBas(*id)) {
          Fail("'" + tok.text + "' is not a basic attack step", tok,
               ErrorCode::kOrderMismatch);
        }
        ids.push_back(*id);
      }
      std::vector<NodeId> sorted_ids = ids, sorted_bas = bas;
      std::sort(sorted_ids.begin(), sorted_ids.end());
      std::sort(sorted_bas.begin(), sorted_bas.end());
      if (sorted_ids != sorted_bas) {
        throw ParseError(ErrorCode::kOrderMismatch,
                         "order '" + name +
                             "' is not a permutation of the basic attack steps",
                         seq.where.line, seq.where.column);
      }
      doc.orders.emplace(name, VarOrder(std::move(ids)));
    }
    return doc;
  }

  struct AttributionEntries {
    Located where{0, 0};
    std::vector<std::pair<Token, RawValue>> values;
  };
  struct OrderEntries {
    Located where{0, 0};
    std::vector<Token> items;
  };

  Lexer lexer_;
  Token look_{TokenKind::kEnd, "", 0, 0};
  std::optional<Token> root_;
  std::vector<NodeSpec> specs_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::vector<Token> references_;
  std::map<std::string, AttributionEntries> attributions_;
  std::map<std::string, OrderEntries> orders_;
};

std::string Quote(const std::string& s) { return "\"" + s + "\""; }

std::string EmitScalar(const ExactScalar& s) {
  return s.infinite ? "inf" : s.value.get_str();
}

std::vector<std::size_t> BasRanks(const AttackTree& tree) {
  std::vector<std::size_t> rank(tree.size(), 0);
  const auto bas = BasOf(tree);
  for (std::size_t i = 0; i < bas.size(); ++i) rank[Index(bas[i])] = i;
  return rank;
}

std::vector<NodeId> InBasOrder(const Attack& attack, const AttackTree& tree) {
  const auto rank = BasRanks(tree);
  std::vector<NodeId> out(attack.begin(), attack.end());
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    return rank[Index(a)] < rank[Index(b)];
  });
  return out;
}

std::string EscapeDot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ModelDocument ParseModel(std::string_view text) { return Parser(text).Parse(); }

ModelDocument LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kSyntaxError,
                "cannot read model file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseModel(buffer.str());
}

std::string EmitModel(const ModelDocument& doc) {
  const AttackTree& tree = doc.tree;
  std::string out = "toplevel " + Quote(tree.label(tree.root())) + ";\n";
  for (const Node& node : tree.nodes()) {
    out += Quote(node.label) + " " + std::string(ToString(node.type));
    for (NodeId c : node.children) out += " " + Quote(tree.label(c));
    out += ";\n";
  }
  for (const auto& [name, raw] : doc.attributions) {
    out += "attribution " + Quote(name) + " {\n";
    for (NodeId a : BasOf(tree)) {
      const RawValue& v = raw.at(a);
      out += "  " + Quote(tree.label(a)) + " = ";
      if (v.tuple) out += "(";
      for (std::size_t i = 0; i < v.components.size(); ++i) {
        if (i) out += ", ";
        out += EmitScalar(v.components[i]);
      }
      if (v.tuple) out += ")";
      out += ";\n";
    }
    out += "}\n";
  }
  for (const auto& [name, order] : doc.orders) {
    out += "order " + Quote(name) + " =";
    for (std::size_t i = 0; i < order.size(); ++i) {
      out += (i ? " < " : " ") + Quote(tree.label(order.at(i)));
    }
    out += ";\n";
  }
  return out;
}

namespace {

Scalar TypeScalar(const ExactScalar& s, ValueKind kind,
                  const std::string& label) {
  if (kind == ValueKind::kExtendedNatural) {
    if (s.infinite) return ExtendedNatural::Infinity();
    if (s.value.get_den() == 1 && s.value >= 0 && s.value.get_num().fits_ulong_p()) {
      return ExtendedNatural(s.value.get_num().get_ui());
    }
    throw Error(ErrorCode::kIncompatibleDomain,
                "value of '" + label + "' is not a natural number or inf");
  }
  if (s.infinite || s.value < 0 || s.value > 1) {
    throw Error(ErrorCode::kIncompatibleDomain,
                "value of '" + label + "' is not a probability in [0,1]");
  }
  return Probability(s.value);
}

}  // namespace

Attribution ToAttribution(const RawAttribution& raw,
                          const AttributeDomain& domain,
                          const AttackTree& tree) {
  Attribution out;
  for (const auto& [id, v] : raw) {
    const std::string& label = tree.label(id);
    if (domain.kind == ValueKind::kPareto) {
      if (v.components.size() != domain.component_kinds.size()) {
        throw Error(ErrorCode::kIncompatibleDomain,
                    "value of '" + label + "' needs " +
                        std::to_string(domain.component_kinds.size()) +
                        " components for domain '" + domain.name + "'");
      }
      Point p;
      for (std::size_t i = 0; i < v.components.size(); ++i) {
        p.push_back(TypeScalar(v.components[i], domain.component_kinds[i], label));
      }
      out.emplace(id, SinglePoint(std::move(p)));
      continue;
    }
    if (v.tuple || v.components.size() != 1) {
      throw Error(ErrorCode::kIncompatibleDomain,
                  "value of '" + label + "' is a tuple but domain '" +
                      domain.name + "' is scalar");
    }
    out.emplace(id, std::visit([](const auto& x) -> MetricValue { return x; },
                               TypeScalar(v.components[0], domain.kind, label)));
  }
  return out;
}

std::string FormatAttack(const Attack& attack, const AttackTree& tree) {
  std::string out = "{";
  bool first = true;
  for (NodeId a : InBasOrder(attack, tree)) {
    if (!first) out += ",";
    first = false;
    out += tree.label(a);
  }
  return out + "}";
}

std::string FormatPoset(const PosetAttack& poset, const AttackTree& tree) {
  const auto rank = BasRanks(tree);
  std::vector<OrderPair> edges(poset.order.begin(), poset.order.end());
  std::sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) {
    return std::pair(rank[Index(x.first)], rank[Index(x.second)]) <
           std::pair(rank[Index(y.first)], rank[Index(y.second)]);
  });
  Attack ordered;
  for (const auto& [x, y] : edges) {
    ordered.insert(x);
    ordered.insert(y);
  }
  std::vector<std::string> items;
  for (const auto& [x, y] : edges) {
    items.push_back(tree.label(x) + "≺" + tree.label(y));
  }
  for (NodeId a : InBasOrder(poset.attack, tree)) {
    if (!ordered.count(a)) items.push_back(tree.label(a));
  }
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? "," : "") + items[i];
  }
  out += "}";
  if (edges.empty()) out += "∅";
  return out;
}

std::string FormatCycle(const std::vector<NodeId>& cycle,
                        const AttackTree& tree) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    out += (i ? " ⊲ " : "") + tree.label(cycle[i]);
  }
  return out;
}

std::vector<Attack> SortedAttacks(const AttackSuite& suite,
                                  const AttackTree& tree) {
  const auto rank = BasRanks(tree);
  auto key = [&](const Attack& a) {
    std::vector<std::size_t> k;
    for (NodeId v : a) k.push_back(rank[Index(v)]);
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<Attack> out(suite.begin(), suite.end());
  std::sort(out.begin(), out.end(),
            [&](const Attack& a, const Attack& b) { return key(a) < key(b); });
  return out;
}

namespace {

nlohmann::ordered_json ValueJson(const MetricValue& value) {
  if (const auto* front = std::get_if<ParetoFront>(&value)) {
    auto arr = nlohmann::ordered_json::array();
    for (const Point& p : front->points()) {
      auto vec = nlohmann::ordered_json::array();
      for (const Scalar& s : p) vec.push_back(ToString(s));
      arr.push_back(std::move(vec));
    }
    return arr;
  }
  return ToString(value);
}

}  // namespace

std::string EmitResult(const AnalysisResult& result, const AttackTree& tree,
                       OutputFormat format, bool with_timings) {
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json j;
    j["metric"] = result.metric;
    j["value"] = ValueJson(result.value);
    j["algorithm"] = result.algorithm;
    j["warnings"] = result.warnings;
    if (!result.ranked.empty()) {
      auto witnesses = nlohmann::ordered_json::array();
      for (const RankedAttack& r : result.ranked) {
        nlohmann::ordered_json w;
        w["value"] = ValueJson(r.value);
        auto labels = nlohmann::ordered_json::array();
        for (NodeId a : InBasOrder(r.attack, tree)) labels.push_back(tree.label(a));
        w["attack"] = std::move(labels);
        witnesses.push_back(std::move(w));
      }
      j["witnesses"] = std::move(witnesses);
    }
    nlohmann::ordered_json stats;
    stats["nodes"] = result.stats.nodes;
    if (result.stats.bdd_nodes) stats["bdd_nodes"] = *result.stats.bdd_nodes;
    if (with_timings) stats["millis"] = result.stats.millis;
    j["stats"] = std::move(stats);
    return j.dump() + "\n";
  }
  std::string out;
  if (!result.ranked.empty()) {
    for (const RankedAttack& r : result.ranked) {
      out += ToString(r.value) + " " + FormatAttack(r.attack, tree) + "\n";
    }
  } else {
    out += "metric: " + result.metric + "\n";
    out += "value: " + ToString(result.value) + "\n";
    out += "algorithm: " + result.algorithm + "\n";
  }
  for (const std::string& w : result.warnings) out += "warning: " + w + "\n";
  if (with_timings) {
    std::ostringstream ms;
    ms << result.stats.millis;
    out += "millis: " + ms.str() + "\n";
  }
  return out;
}

std::string EmitDot(const AttackTree& tree) {
  std::string out = "digraph attack_tree {\n";
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const Node& node = tree.node(NodeId{i});
    const std::string name = "n" + std::to_string(i);
    if (node.type == NodeType::kBas) {
      out += "  " + name + " [label=\"" + EscapeDot(node.label) +
             "\", shape=ellipse];\n";
    } else {
      std::string type(ToString(node.type));
      std::transform(type.begin(), type.end(), type.begin(), ::toupper);
      out += "  " + name + " [label=\"" + EscapeDot(node.label) + "\\n" +
             type + "\", shape=box];\n";
    }
  }
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const Node& node = tree.node(NodeId{i});
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      out += "  n" + std::to_string(i) + " -> n" +
             std::to_string(Index(node.children[k]));
      if (node.type == NodeType::kSand) {
        out += " [label=\"" + std::to_string(k + 1) + "\"]";
      }
      out += ";\n";
    }
  }
  return out + "}\n";
}

std::string EmitDot(const Bdd& bdd, const AttackTree& tree) {
  const std::vector<BddRef> nodes = bdd.Reachable();
  std::unordered_map<BddRef, std::string> name;
  std::size_t next = 0;
  for (BddRef r : nodes) {
    if (r == kBddFalse) {
      name[r] = "bot";
    } else if (r == kBddTrue) {
      name[r] = "top";
    } else {
      name[r] = "w" + std::to_string(next++);
    }
  }
  std::string out = "digraph bdd {\n";
  for (BddRef r : nodes) {
    if (IsTerminal(r)) {
      out += "  " + name[r] + " [label=\"" + (r == kBddTrue ? "1" : "0") +
             "\", shape=box];\n";
    } else {
      out += "  " + name[r] + " [label=\"" +
             EscapeDot(tree.label(bdd.Label(r))) + "\", shape=circle];\n";
    }
  }
  for (BddRef r : nodes) {
    if (IsTerminal(r)) continue;
    const auto& n = bdd.manager().node(r);
    out += "  " + name[r] + " -> " + name[n.low] + " [style=dashed];\n";
    out += "  " + name[r] + " -> " + name[n.high] + " [style=solid];\n";
  }
  return out + "}\n";
}

}  // namespace atquant
