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

#ifndef ATQUANT_VALUES_HPP_
#define ATQUANT_VALUES_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "atquant/attack_tree.hpp"

namespace atquant {

/// Element of N ∪ {∞}. Arithmetic saturates at ∞.
class ExtendedNatural {
 public:
  constexpr ExtendedNatural() = default;
  constexpr explicit ExtendedNatural(std::uint64_t value) : value_(value) {}

  static constexpr ExtendedNatural Infinity() {
    ExtendedNatural v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool infinite() const { return infinite_; }
  /// Meaningless when infinite().
  constexpr std::uint64_t value() const { return value_; }

  friend ExtendedNatural operator+(ExtendedNatural a, ExtendedNatural b);

  friend constexpr bool operator==(ExtendedNatural a, ExtendedNatural b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtendedNatural a,
                                                    ExtendedNatural b) {
    if (a.infinite_ || b.infinite_) {
      return a.infinite_ <=> b.infinite_;
    }
    return a.value_ <=> b.value_;
  }

  std::string ToString() const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// Exact rational probability in [0,1].
class Probability {
 public:
  Probability() = default;
  /// Throws Error(kNotProbability) when outside [0,1].
  explicit Probability(mpq_class q);
  static Probability FromRatio(long num, unsigned long den);

  const mpq_class& value() const { return q_; }

  friend bool operator==(const Probability& a, const Probability& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Probability& a,
                                          const Probability& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  /// Exact decimal ("0.07") when one exists, otherwise "p/q".
  std::string ToString() const;

 private:
  mpq_class q_{0};
};

using Scalar = std::variant<ExtendedNatural, Probability>;
using Point = std::vector<Scalar>;

enum class Direction { kMin, kMax };

/// Set of mutually non-dominated points, kept sorted lexicographically.
class ParetoFront {
 public:
  ParetoFront() = default;

  /// Builds a front from arbitrary points: drops dominated ones and
  /// duplicates. `directions` fixes the arity.
  static ParetoFront Prune(std::vector<Point> points,
                           const std::vector<Direction>& directions);

  const std::vector<Point>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

  friend bool operator==(const ParetoFront&, const ParetoFront&) = default;

 private:
  std::vector<Point> points_;
};

/// True when `u` is at least as good as `w` in every coordinate and strictly
/// better in one.
bool Dominates(const Point& u, const Point& w,
               const std::vector<Direction>& directions);

using MetricValue = std::variant<ExtendedNatural, Probability, ParetoFront>;

enum class ValueKind { kExtendedNatural, kProbability, kPareto };

ValueKind KindOf(const MetricValue& value);
std::string_view ToString(ValueKind kind);

std::string ToString(const Scalar& value);
std::string ToString(const MetricValue& value);

/// Mapping from BAS to attribute values.
using Attribution = std::map<NodeId, MetricValue>;

}  // namespace atquant

#endif  // ATQUANT_VALUES_HPP_
