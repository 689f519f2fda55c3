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

#include "atquant/values.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "atquant/error.hpp"

namespace atquant {

ExtendedNatural operator+(ExtendedNatural a, ExtendedNatural b) {
  if (a.infinite_ || b.infinite_) return ExtendedNatural::Infinity();
  if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_) {
    throw std::overflow_error("extended natural overflow");
  }
  return ExtendedNatural(a.value_ + b.value_);
}

std::string ExtendedNatural::ToString() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

Probability::Probability(mpq_class q) : q_(std::move(q)) {
  q_.canonicalize();
  if (q_ < 0 || q_ > 1) {
    throw Error(ErrorCode::kNotProbability,
                "value " + q_.get_str() + " is not in [0,1]");
  }
}

Probability Probability::FromRatio(long num, unsigned long den) {
  return Probability(mpq_class(num, den));
}

// Exact decimal when the denominator is 2^a 5^b, otherwise p/q.
std::string Probability::ToString() const {
  mpz_class den = q_.get_den();
  std::size_t twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return q_.get_str();
  const std::size_t digits = std::max(twos, fives);
  if (digits == 0) return q_.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpz_class scaled = q_.get_num() * (scale / q_.get_den());
  std::string body = scaled.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return body;
}

namespace {

// <0 when `a` is better than `b` in direction `d`.
int Compare(const Scalar& a, const Scalar& b, Direction d) {
  int c = a < b ? -1 : (b < a ? 1 : 0);
  return d == Direction::kMin ? c : -c;
}

}  // namespace

bool Dominates(const Point& u, const Point& w,
               const std::vector<Direction>& directions) {
  bool strictly = false;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    int c = Compare(u[i], w[i], directions[i]);
    if (c > 0) return false;
    if (c < 0) strictly = true;
  }
  return strictly;
}

ParetoFront ParetoFront::Prune(std::vector<Point> points,
                               const std::vector<Direction>& directions) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<bool> keep(points.size(), true);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size() && keep[i]; ++j) {
      keep[i] = j == i || !Dominates(points[j], points[i], directions);
    }
  }
  ParetoFront front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (keep[i]) front.points_.push_back(std::move(points[i]));
  }
  return front;
}

ValueKind KindOf(const MetricValue& value) {
  switch (value.index()) {
    case 0: return ValueKind::kExtendedNatural;
    case 1: return ValueKind::kProbability;
    default: return ValueKind::kPareto;
  }
}

std::string_view ToString(ValueKind kind) {
  switch (kind) {
    case ValueKind::kExtendedNatural: return "extended-natural";
    case ValueKind::kProbability: return "probability";
    case ValueKind::kPareto: return "pareto";
  }
  return "?";
}

std::string ToString(const Scalar& value) {
  return std::visit([](const auto& v) { return v.ToString(); }, value);
}

std::string ToString(const MetricValue& value) {
  if (const auto* front = std::get_if<ParetoFront>(&value)) {
    std::string out = "{";
    bool first_point = true;
    for (const Point& p : front->points()) {
      if (!first_point) out += ", ";
      first_point = false;
      out += "(";
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += ToString(p[i]);
      }
      out += ")";
    }
    return out + "}";
  }
  if (const auto* n = std::get_if<ExtendedNatural>(&value)) return n->ToString();
  return std::get<Probability>(value).ToString();
}

}  // namespace atquant
