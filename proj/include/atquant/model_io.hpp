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

#ifndef ATQUANT_MODEL_IO_HPP_
#define ATQUANT_MODEL_IO_HPP_

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atquant/analysis.hpp"
#include "atquant/attack_tree.hpp"
#include "atquant/bdd.hpp"
#include "atquant/domains.hpp"
#include "atquant/semantics.hpp"

// Model file format (one tree per file, `//` comments):
//
//   toplevel "pin";
//   "pin" or "n" "crypto";
//   "crypto" and "t" "p";
//   "n" bas;  "t" bas;  "p" bas;
//   attribution "time" { "n" = 1; "t" = 100; "p" = 0; }
//   order "alt" = "p" < "t" < "n";
//
// Values are `inf`, integers, decimals, rationals `p/q`, or tuples
// `(v1, v2, ...)` for Pareto domains. All numbers are kept exact.

namespace atquant {

struct ExactScalar {
  bool infinite = false;
  mpq_class value{0};

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// An attribute value as written in the file, before a domain gives it a
/// type.
struct RawValue {
  std::vector<ExactScalar> components;
  bool tuple = false;

  friend bool operator==(const RawValue&, const RawValue&) = default;
};

using RawAttribution = std::map<NodeId, RawValue>;

struct ModelDocument {
  AttackTree tree;
  std::map<std::string, RawAttribution> attributions;
  std::map<std::string, VarOrder> orders;

  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

/// Throws ParseError (kSyntaxError, kDuplicateDefinition, or the tree
/// construction error) with the offending line and column.
ModelDocument ParseModel(std::string_view text);
ModelDocument LoadModel(const std::filesystem::path& path);

/// Canonical text; ParseModel(EmitModel(d)) == d.
std::string EmitModel(const ModelDocument& document);

/// Types raw values for `domain`. Throws kIncompatibleDomain.
Attribution ToAttribution(const RawAttribution& raw,
                          const AttributeDomain& domain,
                          const AttackTree& tree);

/// "{t,p}", members in BAS order.
std::string FormatAttack(const Attack& attack, const AttackTree& tree);
/// "{w≺cc}" for ordered attacks, "{ff,w}∅" when the order is empty.
std::string FormatPoset(const PosetAttack& poset, const AttackTree& tree);
/// "a ⊲ b ⊲ a".
std::string FormatCycle(const std::vector<NodeId>& cycle,
                        const AttackTree& tree);

std::vector<Attack> SortedAttacks(const AttackSuite& suite,
                                  const AttackTree& tree);

enum class OutputFormat { kText, kJson };

/// Stable field order; values exact ("p/q", "inf"). Timings are included
/// only when requested so that repeated runs are byte-identical.
std::string EmitResult(const AnalysisResult& result, const AttackTree& tree,
                       OutputFormat format, bool with_timings = false);

std::string EmitDot(const AttackTree& tree);
/// Dashed edges are low children, solid edges high children; terminals are
/// boxes.
std::string EmitDot(const Bdd& bdd, const AttackTree& tree);

}  // namespace atquant

#endif  // ATQUANT_MODEL_IO_HPP_
