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

#include "hgmono/stats.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "hgmono/errors.hpp"
#include "hgmono/rng.hpp"

namespace hgmono {
namespace {

TEST(WilsonTest, KnownValues) {
  // 10 of 100 at z = 1.96: [0.0552, 0.1744].
  const Interval ci = wilson_interval(10, 100, kZ95);
  EXPECT_NEAR(ci.low, 0.05522914, 1e-6);
  EXPECT_NEAR(ci.high, 0.17436566, 1e-6);
  EXPECT_DOUBLE_EQ(wilson_interval(0, 0).low, 0.0);
  EXPECT_DOUBLE_EQ(wilson_interval(0, 0).high, 1.0);
  EXPECT_NEAR(wilson_interval(0, 50).low, 0.0, 1e-15);
  EXPECT_NEAR(wilson_interval(50, 50).high, 1.0, 1e-15);
}

TEST(WilsonTest, CoverageNearNominal) {
  Rng rng(1);
  const double p = 0.3;
  int covered = 0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    std::uint64_t hits = 0;
    for (int i = 0; i < 200; ++i) hits += rng.uniform01() < p;
    covered += wilson_interval(hits, 200).contains(p);
  }
  EXPECT_NEAR(covered / static_cast<double>(reps), 0.95, 0.015);
}

TEST(ChiSquareTest, SurvivalKnownValues) {
  EXPECT_NEAR(chi_square_survival(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_survival(11.070497693516351, 5), 0.05, 1e-9);
  EXPECT_DOUBLE_EQ(chi_square_survival(0.0, 3), 1.0);
}

TEST(ChiSquareTest, CalibratedOnFairDie) {
  Rng rng(2);
  const std::vector<double> probs(6, 1.0 / 6.0);
  int below_01 = 0;
  int below_001 = 0;
  const int runs = 10000;
  for (int r = 0; r < runs; ++r) {
    std::vector<std::uint64_t> counts(6);
    for (int i = 0; i < 600; ++i) ++counts[rng.below(6)];
    const ChiSquareResult res = chi_square_gof(counts, probs);
    EXPECT_EQ(res.dof, 5u);
    below_01 += res.p_value < 0.01;
    below_001 += res.p_value < 0.001;
  }
  EXPECT_TRUE(wilson_interval(below_01, runs, kZ99).contains(0.01)) << below_01;
  EXPECT_LE(below_001, 25);
}

TEST(ChiSquareTest, DetectsBiasedSampler) {
  Rng rng(3);
  const std::vector<double> probs(4, 0.25);
  std::vector<std::uint64_t> counts(4);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t v = rng.below(4);
    // Moves one percent of the mass from category 3 to category 0.
    ++counts[v == 3 && rng.uniform01() < 0.04 ? 0 : v];
  }
  EXPECT_LT(chi_square_gof(counts, probs).p_value, 1e-6);
}

TEST(ChiSquareTest, ImpossibleOutcomeFails) {
  const std::vector<double> probs{0.5, 0.5, 0.0};
  const std::vector<std::uint64_t> counts{40, 59, 1};
  const ChiSquareResult res = chi_square_gof(counts, probs);
  EXPECT_TRUE(res.impossible_outcome);
  EXPECT_EQ(res.p_value, 0.0);
}

TEST(ChiSquareTest, PoolsSparseCategories) {
  const std::vector<double> probs{0.01, 0.01, 0.02, 0.96};
  const std::vector<std::uint64_t> counts{1, 0, 3, 96};
  const ChiSquareResult res = chi_square_gof(counts, probs);
  // Expectations 1, 1, 2 pool into a bin of 4 which is below 5, so it joins the last.
  EXPECT_EQ(res.bins, 1u);
  EXPECT_EQ(res.p_value, 1.0);
  EXPECT_THROW(chi_square_gof(counts, std::vector<double>{0.5, 0.5}), DomainError);
}

TEST(LogLogFitTest, RecoversPowerLaw) {
  const std::vector<double> x{1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 0.5));
  const LineFit fit = loglog_fit(x, y);
  EXPECT_NEAR(fit.slope, 0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
  EXPECT_THROW(loglog_fit(std::vector<double>{1}, std::vector<double>{1}), DomainError);
}

TEST(HomogeneityTest, SameLawIsCalibrated) {
  Rng rng(17);
  int rejected = 0;
  const int kRuns = 2000;
  for (int run = 0; run < kRuns; ++run) {
    std::vector<std::uint64_t> a(6), b(6);
    for (int i = 0; i < 600; ++i) ++a[rng.below(6)];
    for (int i = 0; i < 300; ++i) ++b[rng.below(6)];
    rejected += chi_square_homogeneity(a, b).p_value < 0.01;
  }
  // Binomial(2000, 0.01): mean 20, sd about 4.5.
  EXPECT_LT(rejected, 40);
}

TEST(HomogeneityTest, DifferentLawsAreRejected) {
  const std::vector<std::uint64_t> a{500, 500, 0, 0};
  const std::vector<std::uint64_t> b{250, 250, 250, 250};
  const ChiSquareResult r = chi_square_homogeneity(a, b);
  EXPECT_LT(r.p_value, 1e-12);
  EXPECT_EQ(r.dof + 1, r.bins);
}

TEST(HomogeneityTest, KnownStatistic) {
  // 2x2 table {{10, 20}, {30, 40}}: chi-square = 0.7936507936...
  const std::vector<std::uint64_t> a{10, 20};
  const std::vector<std::uint64_t> b{30, 40};
  const ChiSquareResult r = chi_square_homogeneity(a, b);
  EXPECT_NEAR(r.statistic, 100.0 * std::pow(10.0 * 40.0 - 20.0 * 30.0, 2) /
                               (30.0 * 70.0 * 40.0 * 60.0), 1e-12);
  EXPECT_EQ(r.dof, 1u);
}

}  // namespace
}  // namespace hgmono
