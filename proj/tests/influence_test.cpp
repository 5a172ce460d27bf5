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

#include "hgmono/influence.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "hgmono/errors.hpp"
#include "hgmono/families.hpp"
#include "hgmono/layers.hpp"
#include "test_oracles.hpp"

namespace hgmono {
namespace {

using testing_oracles::literal_coordinate_draws;
using testing_oracles::literal_walk_law;

FunctionOracle random_function(const GridShape& shape, std::uint64_t seed) {
  return make_family({.family = Family::random_balanced, .seed = seed}, shape);
}

// Influence straight from the walk law of length one.
std::pair<double, double> literal_influence(const FunctionOracle& f) {
  const GridShape& shape = f.shape();
  double total = 0.0;
  double negative = 0.0;
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point x = point_of(shape, i);
    const bool fx = f.eval(x);
    for (const auto& [y, p] : literal_walk_law(shape.n(), x, 1, Direction::up)) {
      const bool fy = f.eval(y);
      if (fx != fy) total += p;
      if (fx && !fy) negative += p;
    }
  }
  const double scale = static_cast<double>(shape.d()) / static_cast<double>(shape.size());
  return {total * scale, negative * scale};
}

TEST(InfluenceTest, ConstantIsZero) {
  for (Family fam : {Family::constant0, Family::constant1}) {
    const InfluenceResult r = influence_tilde(make_family({.family = fam}, GridShape(4, 3)));
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.total, 0.0);
    EXPECT_EQ(r.negative, 0.0);
  }
}

TEST(InfluenceTest, EdgeExample) {
  const auto f = make_family({.family = Family::anti_dictator}, GridShape(2, 1));
  const InfluenceResult r = influence_tilde_exact(f);
  EXPECT_DOUBLE_EQ(r.total, 0.5);
  EXPECT_DOUBLE_EQ(r.negative, 0.5);
}

TEST(InfluenceTest, MatchesLiteralWalkLaw) {
  for (const GridShape& shape : {GridShape(2, 3), GridShape(4, 2), GridShape(4, 3), GridShape(8, 2)}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto f = random_function(shape, seed);
      const InfluenceResult r = influence_tilde_exact(f);
      const auto [total, negative] = literal_influence(f);
      EXPECT_NEAR(r.total, total, 1e-12) << shape.to_string();
      EXPECT_NEAR(r.negative, negative, 1e-12) << shape.to_string();
    }
  }
}

TEST(InfluenceTest, HypercubeAverageEqualsWalkForm) {
  for (std::uint32_t d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto f = random_function(GridShape(4, d), seed);
      const InfluenceResult walk = influence_tilde_exact(f);
      const HypercubeInfluence cube = hypercube_average_influence(f);
      EXPECT_NEAR(walk.total, cube.total, 1e-12);
      EXPECT_NEAR(walk.negative, cube.negative, 1e-12);
    }
  }
  const auto g = make_family({.family = Family::surface, .seed = 2}, GridShape(8, 2));
  EXPECT_NEAR(influence_tilde_exact(g).total, hypercube_average_influence(g).total, 1e-12);
}

TEST(InfluenceTest, MonteCarloIntervalCoversExact) {
  const auto f = random_function(GridShape(8, 3), 9);
  const InfluenceResult exact = influence_tilde_exact(f);
  const InfluenceResult mc = influence_tilde_mc(f, 200000, 4, kZ99);
  EXPECT_FALSE(mc.exact);
  EXPECT_TRUE(mc.total_ci.contains(exact.total)) << exact.total;
  EXPECT_TRUE(mc.negative_ci.contains(exact.negative)) << exact.negative;
}

TEST(InfluenceTest, FallsBackToMonteCarlo) {
  const auto f = random_function(GridShape(8, 3), 1);
  const InfluenceResult r = influence_tilde(f, 10, 1000, 3);
  EXPECT_TRUE(r.fell_back);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.samples, 1000u);
}

TEST(InfluenceTest, CubeInfluenceAtMostHalfD) {
  // On {1,2}^d an up-step moves only from coordinates at 1.
  for (std::uint32_t d : {4u, 9u, 16u}) {
    const FunctionOracle parity(GridShape(2, d), [](std::span<const Coord> x) {
      unsigned s = 0;
      for (Coord c : x) s += c;
      return (s & 1U) == 1U;
    });
    const InfluenceResult r = influence_tilde_exact(parity);
    EXPECT_NEAR(r.total, d / 2.0, 1e-9);
    EXPECT_NEAR(r.negative, d / 4.0, 1e-9);
  }
}

TEST(PersistenceTest, ConstantAndTopArePersistent) {
  const GridShape shape(4, 3);
  const auto c = make_family({.family = Family::constant1}, shape);
  const auto f = random_function(shape, 2);
  const Point top = Point::filled(3, 4);
  for (std::uint32_t tau : {1u, 2u, 3u}) {
    EXPECT_EQ(persistence_classify(c, tau, 0.1, Point{2, 3, 1}, Direction::up), Verdict::yes);
    EXPECT_EQ(persistence_classify(c, tau, 0.1, Point{2, 3, 1}, Direction::down), Verdict::yes);
    EXPECT_EQ(persistence_classify(f, tau, 0.01, top, Direction::up), Verdict::yes);
  }
  EXPECT_THROW(persistence_classify(c, 1, 1.5, top, Direction::up), DomainError);
}

TEST(PersistenceTest, ExactMatchesLiteralLaw) {
  const GridShape shape(4, 2);
  const auto f = random_function(shape, 6);
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point x = point_of(shape, i);
    for (Direction dir : {Direction::up, Direction::down}) {
      double change = 0.0;
      for (const auto& [y, p] : literal_walk_law(4, x, 2, dir)) change += f.eval(y) != f.eval(x) ? p : 0.0;
      EXPECT_NEAR(change_probability(f, x, 2, dir).value, change, 1e-12);
    }
  }
}

TEST(PersistenceTest, MonteCarloIsThreeValued) {
  // n = 2, d = 1, anti-dictator: from 1 the up-walk always changes the value.
  const auto f = make_family({.family = Family::anti_dictator}, GridShape(2, 2));
  const Point x{1, 1};
  const double exact = change_probability(f, x, 1, Direction::up).value;
  EXPECT_DOUBLE_EQ(exact, 0.5);
  ClassifierOptions opts{.samples = 50, .seed = 1};
  EXPECT_EQ(persistence_classify(f, 1, 0.5, x, Direction::up, opts), Verdict::undecided);
  opts.samples = 20000;
  EXPECT_EQ(persistence_classify(f, 1, 0.2, x, Direction::up, opts), Verdict::no);
  EXPECT_EQ(persistence_classify(f, 1, 0.8, x, Direction::up, opts), Verdict::yes);
}

TEST(PersistenceTest, ScanCountsBothDirections) {
  const GridShape shape(2, 4);
  const auto f = random_function(shape, 3);
  const PersistenceScan scan = non_persistent_fraction(f, 2, 0.3);
  std::uint64_t failing = 0;
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point x = point_of(shape, i);
    bool bad = false;
    for (Direction dir : {Direction::up, Direction::down}) {
      double change = 0.0;
      for (const auto& [y, p] : literal_walk_law(2, x, 2, dir)) change += f.eval(y) != f.eval(x) ? p : 0.0;
      bad = bad || change > 0.3;
    }
    failing += bad;
  }
  EXPECT_EQ(scan.non_persistent, failing);
  EXPECT_DOUBLE_EQ(scan.measured_constant, scan.fraction * 0.3 * 2.0 / 2.0);
}

TEST(ClassifierTest, MzbOnConstants) {
  const GridShape shape(4, 2);
  const auto zero = make_family({.family = Family::constant0}, shape);
  const auto one = make_family({.family = Family::constant1}, shape);
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point z = point_of(shape, i);
    EXPECT_EQ(mzb_classify(zero, 2, z), Verdict::yes);
    EXPECT_EQ(mzb_classify(one, 2, z), Verdict::no);
  }
}

TEST(ClassifierTest, EdgeExampleIsRedAndBlue) {
  const auto f = make_family({.family = Family::anti_dictator}, GridShape(2, 1));
  const Point x{1};
  const Point y{2};
  EXPECT_EQ(mzb_classify(f, 0, y), Verdict::yes);
  EXPECT_EQ(mzb_classify(f, 0, x), Verdict::no);
  EXPECT_DOUBLE_EQ(red_probability(f, 0, x, y).value, 0.5);
  EXPECT_DOUBLE_EQ(blue_probability(f, 0, x, y).value, 0.5);
  EXPECT_EQ(red_classify(f, 0, x, y), Verdict::yes);
  EXPECT_EQ(blue_classify(f, 0, x, y), Verdict::yes);
  EXPECT_THROW(red_classify(f, 0, y, x), DomainError);
}

TEST(ClassifierTest, RejectsNonAxisOrNonViolatedEdges) {
  const auto f = make_family({.family = Family::anti_dictator}, GridShape(2, 2));
  EXPECT_THROW(red_probability(f, 1, Point{1, 1}, Point{2, 2}), DomainError);
  EXPECT_THROW(blue_probability(f, 1, Point{2, 1}, Point{2, 2}), DomainError);
}

TEST(ClassifierTest, MonteCarloAgreesWithExact) {
  const GridShape shape(4, 3);
  const auto f = make_family({.family = Family::anti_dictator}, shape);
  const Point x{2, 3, 1};
  const Point y{3, 3, 1};
  const ClassifierOptions mc{.samples = 20000, .seed = 7};
  for (std::uint32_t ell : {1u, 2u}) {
    const double red = red_probability(f, ell, x, y).value;
    const double blue = blue_probability(f, ell, x, y).value;
    EXPECT_TRUE(red_probability(f, ell, x, y, mc).ci.contains(red)) << red;
    EXPECT_TRUE(blue_probability(f, ell, x, y, mc).ci.contains(blue)) << blue;
    const double mzb = mzb_probability(f, ell, y).value;
    EXPECT_TRUE(mzb_probability(f, ell, y, mc).ci.contains(mzb)) << mzb;
  }
}

// Pr[x in the middle layers of H] by enumerating every partner tuple.
double literal_typicality(std::uint32_t n, const Point& x, double c, double eps) {
  const auto d = static_cast<std::uint32_t>(x.size());
  std::vector<std::vector<std::pair<Coord, double>>> draws;
  for (Coord u : x) draws.push_back(literal_coordinate_draws(n, u));
  double inside = 0.0;
  std::function<void(std::uint32_t, std::uint32_t, double)> rec = [&](std::uint32_t i,
                                                                     std::uint32_t w, double p) {
    if (i == d) {
      if (weight_in_middle_layers(w, d, c, eps)) inside += p;
      return;
    }
    for (const auto& [cv, pc] : draws[i]) rec(i + 1, w + (cv < x[i] ? 1U : 0U), p * pc);
  };
  rec(0, 0, 1.0);
  return inside;
}

TEST(TypicalityTest, ExactMatchesEnumeration) {
  const GridShape shape(4, 3);
  for (PointIndex i = 0; i < shape.size(); ++i) {
    const Point x = point_of(shape, i);
    for (double c : {0.01, 0.05, 1.0}) {
      EXPECT_NEAR(typicality_probability(shape, x, c, 0.5).value,
                  literal_typicality(4, x, c, 0.5), 1e-12);
    }
  }
}

TEST(TypicalityTest, WideBandIsCertain) {
  const GridShape shape(8, 6);
  const Point x{1, 8, 3, 4, 5, 2};
  EXPECT_NEAR(typicality_probability(shape, x, 100.0, 0.5).value, 1.0, 1e-12);
  const ProbabilityEstimate mc = typicality_estimate(shape, x, 100.0, 0.5, 500, 1);
  EXPECT_EQ(mc.value, 1.0);
}

TEST(TypicalityTest, CentralPointInHighDimension) {
  const GridShape shape(8, 32);
  const Point x = Point::filled(32, 4);
  const ProbabilityEstimate mc = typicality_estimate(shape, x, 1.0, 0.5, 20000, 2);
  EXPECT_GT(mc.value, 0.99);
  EXPECT_TRUE(mc.ci.contains(typicality_probability(shape, x, 1.0, 0.5).value));
}

TEST(TypicalityTest, FractionMeetsBound) {
  const GridShape shape(4, 8);
  const double fraction = typical_fraction(shape, 7.0, 0.5);
  EXPECT_GE(fraction, typical_fraction_bound(8, 7.0, 0.5));
  EXPECT_TRUE(is_typical(1.0, 8, 0.5));
  EXPECT_FALSE(is_typical(0.9, 8, 0.5));
}

}  // namespace
}  // namespace hgmono
