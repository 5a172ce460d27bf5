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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "hgmono/errors.hpp"

namespace hgmono {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

double chi_square_survival(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (!(statistic > 0.0)) return 1.0;
  if (std::isinf(statistic)) return 0.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities,
                               double min_expected) {
  if (observed.size() != probabilities.size()) {
    throw DomainError("observed and expected category counts differ");
  }
  ChiSquareResult result;
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probabilities[i] > 0.0) {
      order.push_back(i);
    } else if (observed[i] > 0) {
      result.impossible_outcome = true;
    }
  }
  if (result.impossible_outcome) {
    result.statistic = std::numeric_limits<double>::infinity();
    result.p_value = 0.0;
    return result;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return probabilities[a] < probabilities[b];
  });

  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin open;
  for (std::size_t i : order) {
    open.expected += probabilities[i] * total;
    open.observed += static_cast<double>(observed[i]);
    if (open.expected >= min_expected) {
      bins.push_back(open);
      open = Bin{};
    }
  }
  if (open.expected > 0.0 || open.observed > 0.0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().expected += open.expected;
      bins.back().observed += open.observed;
    }
  }
  result.bins = static_cast<std::uint32_t>(bins.size());
  if (bins.size() < 2) return result;
  for (const Bin& b : bins) {
    const double diff = b.observed - b.expected;
    result.statistic += diff * diff / b.expected;
  }
  result.dof = result.bins - 1;
  result.p_value = chi_square_survival(result.statistic, result.dof);
  return result;
}

ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       double min_expected) {
  if (a.size() != b.size()) throw DomainError("samples have different category counts");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  ChiSquareResult result;
  if (na == 0.0 || nb == 0.0) return result;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] + b[i] > 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i] + b[i] < a[j] + b[j]; });
  const double share = std::min(na, nb) / (na + nb);
  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> open{0.0, 0.0};
  for (std::size_t i : order) {
    open.first += static_cast<double>(a[i]);
    open.second += static_cast<double>(b[i]);
    if ((open.first + open.second) * share >= min_expected) {
      bins.push_back(open);
      open = {0.0, 0.0};
    }
  }
  if (open.first + open.second > 0.0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().first += open.first;
      bins.back().second += open.second;
    }
  }
  result.bins = static_cast<std::uint32_t>(bins.size());
  if (bins.size() < 2) return result;
  const double total = na + nb;
  for (const auto& [oa, ob] : bins) {
    const double col = oa + ob;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    result.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  result.dof = result.bins - 1;
  result.p_value = chi_square_survival(result.statistic, result.dof);
  return result;
}

LineFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("log-log fit needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("log-log fit needs distinct x values");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace hgmono
