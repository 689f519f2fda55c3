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

#include <gtest/gtest.h>

#include <limits>
#include <stdexcept>

#include "atquant/error.hpp"

namespace atquant {
namespace {

using N = ExtendedNatural;

Point P(std::uint64_t a, std::uint64_t b) { return {N(a), N(b)}; }

TEST(ExtendedNaturalTest, InfinityAbsorbsAddition) {
  EXPECT_EQ(N(2) + N(3), N(5));
  EXPECT_EQ(N(2) + N::Infinity(), N::Infinity());
  EXPECT_EQ(N::Infinity() + N::Infinity(), N::Infinity());
}

TEST(ExtendedNaturalTest, OrderPutsInfinityLast) {
  EXPECT_LT(N(0), N(1));
  EXPECT_LT(N(1000000), N::Infinity());
  EXPECT_EQ(N::Infinity() <=> N::Infinity(), std::strong_ordering::equal);
}

TEST(ExtendedNaturalTest, OverflowThrows) {
  EXPECT_THROW(N(std::numeric_limits<std::uint64_t>::max()) + N(1),
               std::overflow_error);
}

TEST(ExtendedNaturalTest, ToString) {
  EXPECT_EQ(N(42).ToString(), "42");
  EXPECT_EQ(N::Infinity().ToString(), "inf");
}

TEST(ProbabilityTest, RangeChecked) {
  EXPECT_NO_THROW(Probability(mpq_class(0)));
  EXPECT_NO_THROW(Probability(mpq_class(1)));
  try {
    Probability(mpq_class(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotProbability);
  }
  EXPECT_THROW(Probability(mpq_class(-1, 5)), Error);
}

TEST(ProbabilityTest, CanonicalAndExact) {
  EXPECT_EQ(Probability::FromRatio(2, 4), Probability::FromRatio(1, 2));
  EXPECT_LT(Probability::FromRatio(1, 3), Probability::FromRatio(1, 2));
}

TEST(ProbabilityTest, ToStringPrefersDecimals) {
  EXPECT_EQ(Probability::FromRatio(7, 100).ToString(), "0.07");
  EXPECT_EQ(Probability::FromRatio(15767, 200000).ToString(), "0.078835");
  EXPECT_EQ(Probability::FromRatio(1, 3).ToString(), "1/3");
  EXPECT_EQ(Probability::FromRatio(1, 1).ToString(), "1");
  EXPECT_EQ(Probability::FromRatio(0, 1).ToString(), "0");
  EXPECT_EQ(Probability::FromRatio(1, 2).ToString(), "0.5");
}

TEST(ParetoFrontTest, PrunesDominated) {
  const std::vector<Direction> mm{Direction::kMin, Direction::kMin};
  const ParetoFront f = ParetoFront::Prune({P(2, 3), P(1, 3), P(2, 1)}, mm);
  EXPECT_EQ(f.points(), (std::vector<Point>{P(1, 3), P(2, 1)}));
}

TEST(ParetoFrontTest, DropsDuplicatesAndSorts) {
  const std::vector<Direction> mm{Direction::kMin, Direction::kMin};
  const ParetoFront f =
      ParetoFront::Prune({P(4, 3), P(3, 4), P(4, 3), P(3, 4)}, mm);
  EXPECT_EQ(f.points(), (std::vector<Point>{P(3, 4), P(4, 3)}));
}

TEST(ParetoFrontTest, MixedDirections) {
  const std::vector<Direction> dirs{Direction::kMin, Direction::kMax};
  const ParetoFront f = ParetoFront::Prune({P(1, 1), P(1, 5), P(2, 9)}, dirs);
  EXPECT_EQ(f.points(), (std::vector<Point>{P(1, 5), P(2, 9)}));
}

TEST(ParetoFrontTest, KeepsEveryPointOfAChain) {
  // Each point dominates the next; only the first survives.
  const std::vector<Direction> mm{Direction::kMin, Direction::kMin};
  const ParetoFront f =
      ParetoFront::Prune({P(1, 1), P(2, 2), P(3, 3), P(4, 4)}, mm);
  EXPECT_EQ(f.points(), (std::vector<Point>{P(1, 1)}));
}

TEST(DominatesTest, StrictInOneCoordinate) {
  const std::vector<Direction> mm{Direction::kMin, Direction::kMin};
  EXPECT_TRUE(Dominates(P(1, 3), P(2, 3), mm));
  EXPECT_FALSE(Dominates(P(1, 3), P(1, 3), mm));
  EXPECT_FALSE(Dominates(P(1, 3), P(2, 1), mm));
}

TEST(MetricValueTest, KindAndText) {
  EXPECT_EQ(KindOf(MetricValue(N(1))), ValueKind::kExtendedNatural);
  EXPECT_EQ(KindOf(MetricValue(Probability::FromRatio(1, 2))),
            ValueKind::kProbability);
  const std::vector<Direction> mm{Direction::kMin, Direction::kMin};
  const MetricValue front = ParetoFront::Prune({P(3, 4), P(4, 3)}, mm);
  EXPECT_EQ(KindOf(front), ValueKind::kPareto);
  EXPECT_EQ(ToString(front), "{(3, 4), (4, 3)}");
}

}  // namespace
}  // namespace atquant
