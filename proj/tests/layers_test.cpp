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

#include "hgmono/layers.hpp"

#include <bit>
#include <cmath>

#include "gtest/gtest.h"
#include "hgmono/errors.hpp"

namespace hgmono {
namespace {

TEST(MiddleLayerTest, Examples) {
  const Hypercube small{{{1, 2}, {1, 2}}};
  EXPECT_TRUE(middle_layer_member(small, Point{2, 1}, 1.0, 0.5));
  Hypercube big;
  big.pairs.assign(400, {1, 2});
  EXPECT_FALSE(middle_layer_member(big, Point::filled(400, 1), 1.0, 0.5));
  EXPECT_THROW(middle_layer_member(small, Point{3, 1}, 1.0, 0.5), DomainError);
  EXPECT_THROW(middle_layer_halfwidth(4, 1.0, 1.5), DomainError);
}

TEST(MiddleLayerTest, FractionMeetsChernoffBound) {
  for (std::uint32_t d : {20u, 40u, 100u}) {
    for (double c : {1.0, 2.0}) {
      const double eps = 0.1;
      EXPECT_GE(middle_layer_fraction(d, c, eps), 1.0 - std::pow(eps / d, c));
    }
  }
}

TEST(ClosedFormTest, Examples) {
  EXPECT_EQ(cube_walk_closed_form(4, 2, 0, 0, Direction::up), 1.0);
  EXPECT_DOUBLE_EQ(cube_walk_closed_form(4, 2, 1, 1, Direction::up), 0.25);
  EXPECT_EQ(cube_walk_closed_form_exact(4, 2, 1, 1, Direction::up), Rational(1, 4));
  EXPECT_THROW(cube_walk_closed_form(4, 2, 2, 1, Direction::up), DomainError);
  EXPECT_THROW(cube_walk_closed_form(4, 2, 1, 5, Direction::up), DomainError);
}

TEST(ClosedFormTest, MatchesSubsetEnumerationExactly) {
  for (std::uint32_t d = 1; d <= 8; ++d) {
    for (std::uint32_t ell = 0; ell <= std::min(d, 4u); ++ell) {
      for (std::uint64_t x = 0; x < (1ULL << d); ++x) {
        const auto up = enumerate_cube_walk(d, x, ell, Direction::up);
        const auto down = enumerate_cube_walk(d, x, ell, Direction::down);
        for (std::uint64_t y = 0; y < (1ULL << d); ++y) {
          if ((x & y) == x) {
            const auto t = static_cast<std::uint32_t>(std::popcount(x ^ y));
            const Rational want =
                t <= ell ? cube_walk_closed_form_exact(d, std::popcount(x), t, ell,
                                                       Direction::up)
                         : Rational(0);
            ASSERT_EQ(up[y], want);
          }
          if ((x & y) == y) {
            const auto t = static_cast<std::uint32_t>(std::popcount(x ^ y));
            const Rational want =
                t <= ell ? cube_walk_closed_form_exact(d, std::popcount(y), t, ell,
                                                       Direction::down)
                         : Rational(0);
            ASSERT_EQ(down[y], want);
          }
        }
      }
    }
  }
}

TEST(ClosedFormTest, ProductFormulaMatchesRatio) {
  for (std::uint32_t d : {8u, 12u, 16u}) {
    for (std::uint32_t w = 0; w <= d; ++w) {
      for (std::uint32_t ell = 1; ell <= 4; ++ell) {
        for (std::uint32_t t = 0; t <= ell && w + t <= d; ++t) {
          const double down = cube_walk_closed_form(d, w, t, ell, Direction::down);
          if (down == 0.0) continue;
          const double ratio = cube_walk_closed_form(d, w, t, ell, Direction::up) / down;
          EXPECT_NEAR(reversibility_product(d, w, t, ell), ratio, 1e-12 * ratio);
        }
      }
    }
  }
}

TEST(ClosedFormTest, MonteCarloWithinThreeSigma) {
  const std::uint32_t d = 8;
  const Hypercube cube{std::vector<std::pair<Coord, Coord>>(d, {1, 2})};
  const Point x{2, 2, 2, 1, 1, 1, 1, 1};
  const Point target{2, 2, 2, 2, 1, 1, 1, 1};
  const double p = cube_walk_closed_form(d, 3, 1, 2, Direction::up);
  Rng rng(21);
  const int kSamples = 1000000;
  int hits = 0;
  for (int i = 0; i < kSamples; ++i) {
    hits += sample_hypercube_walk(cube, x, 2, Direction::up, rng) == target;
  }
  const double sigma = std::sqrt(p * (1 - p) / kSamples);
  EXPECT_LT(std::abs(hits / double(kSamples) - p), 3 * sigma);
}

TEST(RestrictedPdfTest, ZeroBeyondWalkLength) {
  const GridShape shape(4, 3);
  EXPECT_EQ(restricted_walk_pdf(shape, Point{1, 1, 1}, Point{2, 2, 1}, 1, 0.5), 0.0);
  const double stay = restricted_walk_pdf(shape, Point{2, 2, 2}, Point{2, 2, 2}, 0, 0.5);
  EXPECT_GE(stay, 0.0);
  EXPECT_LE(stay, 1.0);
  EXPECT_THROW(restricted_walk_pdf(shape, Point{1, 2, 1}, Point{2, 1, 1}, 2, 0.5),
               DomainError);
}

TEST(RestrictedPdfTest, WideBandReducesToWalkPmf) {
  // With the band covering every weight the pdf is the ordinary walk law.
  const GridShape shape(4, 3);
  const Point x{2, 1, 3};
  const WalkPmf pmf = exact_pmf(shape, x, {Direction::up, 2}, Formulation::cube_at_x);
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point y = point_of(shape, i);
    if (!precedes(x, y)) continue;
    EXPECT_NEAR(restricted_walk_pdf(shape, x, y, 2, 0.5, 100.0), pmf.at(i), 1e-12);
  }
}

TEST(RestrictedPdfTest, CubeRatioMatchesProduct) {
  const GridShape shape(2, 16);
  Point x = Point::filled(16, 1);
  for (std::uint32_t i = 0; i < 8; ++i) x[i] = 2;
  Point up = x;
  up[8] = 2;
  up[9] = 2;
  const std::uint32_t ell = 4;
  const double forward = restricted_walk_pdf(shape, x, up, ell, 0.5);
  const double backward = restricted_walk_pdf(shape, up, x, ell, 0.5);
  ASSERT_GT(backward, 0.0);
  EXPECT_NEAR(forward / backward, reversibility_product(16, 8, 2, ell), 1e-12);
}

TEST(RestrictedPdfTest, BudgetIsEnforced) {
  const GridShape shape(8, 16);
  EXPECT_THROW(restricted_walk_pdf(shape, Point::filled(16, 3), Point::filled(16, 3), 4,
                                   0.5, 100.0, 1000),
               ResourceError);
}

}  // namespace
}  // namespace hgmono
