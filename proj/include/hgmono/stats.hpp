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

#ifndef HGMONO_STATS_HPP_
#define HGMONO_STATS_HPP_

#include <cstdint>
#include <span>

namespace hgmono {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double low = 0.0;
  double high = 1.0;

  bool contains(double v) const { return low <= v && v <= high; }
  double half_width() const { return (high - low) / 2.0; }
};

// Wilson score interval for a binomial proportion. [0, 1] when trials = 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint32_t dof = 0;
  double p_value = 1.0;
  // Number of categories after pooling.
  std::uint32_t bins = 0;
  // Some sample fell on a category of zero expected probability.
  bool impossible_outcome = false;
};

// Pearson goodness of fit of observed counts against category
// probabilities. Categories are pooled in order of increasing expectation
// until every pooled expectation reaches `min_expected`.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities,
                               double min_expected = 5.0);

// Pearson test that two count vectors come from the same distribution.
// Categories are pooled in order of increasing combined count until each
// pooled expectation in both samples reaches `min_expected`.
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       double min_expected = 5.0);

// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, double dof);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least squares fit of log(y) against log(x). All values must be positive.
LineFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace hgmono

#endif  // HGMONO_STATS_HPP_
