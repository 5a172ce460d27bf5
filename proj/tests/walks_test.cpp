// Copyright 2026 The hgmono Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hgmono/walks.hpp"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "hgmono/errors.hpp"
#include "hgmono/walk_pmf.hpp"
#include "test_oracles.hpp"

namespace hgmono {
namespace {

TEST(WalkTest, TopPointAbsorbsUpWalk) {
  const GridShape shape(8, 3);
  Rng rng(1);
  const Point top = Point::filled(3, 8);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_upwalk(shape, top, 4, rng), top);
}

TEST(WalkTest, BottomPointAbsorbsDownWalk) {
  const GridShape shape(8, 3);
  Rng rng(2);
  const Point bottom = Point::filled(3, 1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_downwalk(shape, bottom, 4, rng), bottom);
}

TEST(WalkTest, ZeroLengthIsIdentity) {
  const GridShape shape(4, 3);
  Rng rng(3);
  const Point x{2, 3, 1};
  EXPECT_EQ(sample_upwalk(shape, x, 0, rng), x);
  EXPECT_EQ(sample_downwalk(shape, x, 0, rng), x);
  EXPECT_EQ(sample_upshift(shape, x, 0, rng).nonzero_count(), 0u);
}

TEST(WalkTest, CubeOfSideTwoSplitsEvenly) {
  const GridShape shape(2, 2);
  Rng rng(4);
  std::map<Point, int> counts;
  const int kSamples = 100000;
  for (int i = 0; i < kSamples; ++i) ++counts[sample_upwalk(shape, Point{1, 1}, 1, rng)];
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_NEAR(counts[Point({2, 1})] / double(kSamples), 0.5, 0.01);
  EXPECT_NEAR(counts[Point({1, 2})] / double(kSamples), 0.5, 0.01);
  EXPECT_EQ(sample_downwalk(GridShape(2, 1), Point{2}, 1, rng), Point{1});
}

TEST(WalkTest, SupportAndLazinessPerSample) {
  const GridShape shape(16, 6);
  Rng rng(5);
  for (int i = 0; i < 20000; ++i) {
    const Point x = sample_uniform_point(shape, rng);
    const std::uint32_t tau = 1U << rng.below(4);
    const Point y = sample_upwalk(shape, x, tau, rng);
    const Point z = sample_downwalk(shape, x, tau, rng);
    ASSERT_TRUE(precedes(x, y));
    ASSERT_TRUE(precedes(z, x));
    std::uint32_t up_moves = 0;
    std::uint32_t down_moves = 0;
    for (std::uint32_t k = 0; k < 6; ++k) {
      up_moves += x[k] != y[k];
      down_moves += x[k] != z[k];
    }
    ASSERT_LE(up_moves, selected_count(tau, 6));
    ASSERT_LE(down_moves, selected_count(tau, 6));
  }
}

TEST(WalkTest, NonDyadicShapeIsRejected) {
  Rng rng(6);
  EXPECT_THROW(sample_upwalk(GridShape::general(3, 2), Point{1, 1}, 1, rng), DomainError);
}

TEST(ShiftTest, ShiftedPointMatchesExactPmf) {
  const GridShape shape(4, 2);
  const Point x{2, 1};
  const WalkPmf pmf = exact_pmf(shape, x, {Direction::up, 1}, Formulation::direct);
  Rng rng(7);
  std::vector<double> freq(shape.size());
  const int kSamples = 1000000;
  for (int i = 0; i < kSamples; ++i) {
    const auto y = sample_upshift(shape, x, 1, rng).apply_up(shape, x);
    ASSERT_TRUE(y.has_value());
    freq[index_of(shape, *y)] += 1.0 / kSamples;
  }
  double tv = 0.0;
  for (PointIndex i = 0; i < shape.size(); ++i) tv += std::abs(freq[i] - pmf.at(i));
  EXPECT_LT(tv / 2.0, 0.01);
}

TEST(ShiftTest, ForeignAnchorReportsOutOfDomain) {
  const GridShape shape(4, 2);
  const ShiftVector s{{3, 0}};
  EXPECT_FALSE(s.apply_down(shape, Point{2, 2}).has_value());
  EXPECT_FALSE(s.apply_up(shape, Point{2, 2}).has_value());
  EXPECT_EQ(*s.apply_down(shape, Point{4, 2}), Point({1, 2}));
  EXPECT_EQ(*s.apply_up(shape, Point{1, 3}), Point({4, 3}));
}

TEST(HypercubeTest, SideTwoIsAlwaysFullCube) {
  const GridShape shape(2, 4);
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    for (const auto& [a, b] : sample_hypercube(shape, rng).pairs) {
      EXPECT_EQ(a, 1u);
      EXPECT_EQ(b, 2u);
    }
    for (const auto& [a, b] : sample_hypercube_at(shape, Point{1, 2, 1, 2}, rng).pairs) {
      EXPECT_EQ(a, 1u);
      EXPECT_EQ(b, 2u);
    }
  }
}

TEST(HypercubeTest, PairLawByHand) {
  // Size-2 windows give (1,2) from one start of four; the size-4 window gives
  // it as one of six pairs: (1/4 + 1/6) / 2.
  const std::vector<double> law = cube_pair_law(4);
  EXPECT_NEAR(law[1 * 5 + 2], 5.0 / 24.0, 1e-15);
  Rng rng(9);
  int hits = 0;
  const int kSamples = 200000;
  for (int i = 0; i < kSamples; ++i) {
    const auto p = sample_hypercube(GridShape(4, 1), rng).pairs[0];
    ASSERT_LT(p.first, p.second);
    hits += p.first == 1 && p.second == 2;
  }
  EXPECT_NEAR(hits / double(kSamples), 5.0 / 24.0, 0.005);
}

TEST(HypercubeTest, ConditionedCubeContainsAnchor) {
  const GridShape shape(16, 5);
  Rng rng(10);
  for (int i = 0; i < 5000; ++i) {
    const Point x = sample_uniform_point(shape, rng);
    const Hypercube h = sample_hypercube_at(shape, x, rng);
    ASSERT_TRUE(h.is_vertex(x));
    for (const auto& [a, b] : h.pairs) ASSERT_LT(a, b);
  }
}

TEST(HypercubeWalkTest, TopVertexStays) {
  const Hypercube h{{{1, 3}, {2, 4}}};
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_hypercube_walk(h, Point{3, 4}, 2, Direction::up, rng), Point({3, 4}));
  }
}

TEST(HypercubeWalkTest, BottomVertexMovesToEachNeighbourEvenly) {
  const Hypercube h{{{1, 3}, {2, 4}}};
  Rng rng(12);
  int first = 0;
  const int kSamples = 100000;
  for (int i = 0; i < kSamples; ++i) {
    const Point y = sample_hypercube_walk(h, Point{1, 2}, 1, Direction::up, rng);
    ASSERT_TRUE(y == Point({3, 2}) || y == Point({1, 4}));
    first += y == Point({3, 2});
  }
  EXPECT_NEAR(first / double(kSamples), 0.5, 0.01);
}

TEST(HypercubeWalkTest, NonVertexIsDomainError) {
  const Hypercube h{{{1, 3}, {2, 4}}};
  Rng rng(13);
  EXPECT_THROW(sample_hypercube_walk(h, Point{2, 2}, 1, Direction::up, rng), DomainError);
}

TEST(LiteralOracleTest, SmallCaseByHand) {
  const auto law = testing_oracles::literal_walk_law(2, Point{1, 1}, 1, Direction::up);
  ASSERT_EQ(law.size(), 2u);
  EXPECT_NEAR(law.at(Point({2, 1})), 0.5, 1e-15);
  EXPECT_NEAR(law.at(Point({1, 2})), 0.5, 1e-15);
}

TEST(WalkPairTest, EveryFormulationMatchesLiteralJointLaw) {
  // Sampled pairs from each formulation against the literal joint law.
  const GridShape shape(4, 2);
  const std::uint32_t tau = 1;
  std::map<std::pair<Point, Point>, double> exact;
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point x = point_of(shape, i);
    for (const auto& [y, p] : testing_oracles::literal_walk_law(4, x, tau, Direction::up)) {
      exact[{x, y}] += p / 16.0;
    }
  }
  for (Formulation form :
       {Formulation::direct, Formulation::cube_first, Formulation::cube_at_x}) {
    Rng rng(14);
    std::map<std::pair<Point, Point>, double> freq;
    const int kSamples = 400000;
    for (int i = 0; i < kSamples; ++i) {
      freq[sample_walk_pair(shape, tau, Direction::up, form, rng)] += 1.0 / kSamples;
    }
    double tv = 0.0;
    for (const auto& [key, p] : exact) tv += std::abs(p - (freq.count(key) ? freq[key] : 0));
    for (const auto& [key, p] : freq) {
      ASSERT_TRUE(exact.count(key)) << to_string(form);
    }
    EXPECT_LT(tv / 2.0, 0.01) << to_string(form);
  }
}

}  // namespace
}  // namespace hgmono
