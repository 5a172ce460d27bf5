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
#include <map>
#include <string>

#include "hgmono/errors.hpp"

namespace hgmono {
namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
}

void check_closed_form_args(std::uint32_t d, std::uint32_t lower_weight, std::uint32_t t,
                            std::uint32_t ell) {
  if (t > ell || ell > d || lower_weight + t > d) {
    throw DomainError("closed form needs t <= l <= d and weight + t <= d");
  }
}

// Visits every m-subset of [0, d) as a bitmask in increasing order.
template <typename Visit>
void for_each_subset(std::uint32_t d, std::uint32_t m, Visit&& visit) {
  if (m == 0) {
    visit(std::uint64_t{0});
    return;
  }
  if (m > d) return;
  const std::uint64_t limit = d == 64 ? 0 : std::uint64_t{1} << d;
  std::uint64_t r = (m == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  while (true) {
    visit(r);
    const std::uint64_t low = r & (~r + 1);
    const std::uint64_t ripple = r + low;
    if (ripple == 0) return;
    r = ripple | (((r ^ ripple) >> 2) / low);
    if (limit != 0 && r >= limit) return;
  }
}

}  // namespace

double middle_layer_halfwidth(std::uint32_t d, double c, double eps) {
  check_eps(eps);
  if (d == 0) throw DomainError("d must be positive");
  return std::sqrt(4.0 * c * d * std::log(d / eps));
}

bool weight_in_middle_layers(std::uint32_t weight, std::uint32_t d, double c, double eps) {
  return std::abs(static_cast<double>(weight) - d / 2.0) <=
         middle_layer_halfwidth(d, c, eps);
}

bool middle_layer_member(const Hypercube& cube, std::span<const Coord> x, double c,
                         double eps) {
  if (!cube.is_vertex(x)) throw DomainError("point is not a vertex of the cube");
  return weight_in_middle_layers(cube.weight(x), cube.d(), c, eps);
}

double middle_layer_fraction(std::uint32_t d, double c, double eps) {
  KahanSum total;
  for (std::uint32_t w = 0; w <= d; ++w) {
    if (weight_in_middle_layers(w, d, c, eps)) {
      total += std::exp(std::lgamma(d + 1.0) - std::lgamma(w + 1.0) -
                        std::lgamma(d - w + 1.0) - d * std::log(2.0));
    }
  }
  return total.value();
}

double restricted_walk_pdf(const GridShape& shape, std::span<const Coord> x,
                           std::span<const Coord> x_prime, std::uint32_t ell, double eps,
                           double c, std::uint64_t budget) {
  const Comparison order = comparable(x, x_prime);
  if (order == Comparison::incomparable) {
    throw DomainError("restricted walk pdf needs comparable points");
  }
  const Direction dir = order == Comparison::y_below_x ? Direction::down : Direction::up;
  const std::uint32_t d = shape.d();
  if (d > 64) throw DomainError("restricted walk pdf supports d <= 64");
  check_eps(eps);
  const std::uint32_t m = selected_count(ell, d);

  // Per coordinate: the ways H can contain x and x', as (x at b_i, weight).
  struct State {
    bool high;
    double weight;
  };
  std::vector<std::vector<State>> states(d);
  std::uint64_t moved = 0;
  std::uint32_t t = 0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const std::vector<double> partner = partner_law(shape.n(), x[i]);
    if (x_prime[i] != x[i]) {
      ++t;
      moved |= std::uint64_t{1} << i;
      if (partner[x_prime[i]] == 0.0) return 0.0;
      states[i].push_back({x_prime[i] < x[i], partner[x_prime[i]]});
      continue;
    }
    KahanSum above;
    KahanSum below;
    for (Coord v = 1; v <= shape.n(); ++v) {
      if (v > x[i]) above += partner[v];
      if (v < x[i]) below += partner[v];
    }
    if (above.value() > 0.0) states[i].push_back({false, above.value()});
    if (below.value() > 0.0) states[i].push_back({true, below.value()});
  }
  if (t > m) return 0.0;

  double combos = 1.0;
  for (const auto& s : states) combos *= static_cast<double>(s.size());
  const double cost = combos * (binomial(d, m) + d);
  if (cost > static_cast<double>(budget)) {
    throw ResourceError("restricted walk pdf needs about " +
                        std::to_string(static_cast<std::uint64_t>(cost)) +
                        " terms, budget is " + std::to_string(budget));
  }

  // Walk probability from x to x' in a cube where `movable` marks the
  // coordinates x may move along.
  const double subsets = binomial(d, m);
  std::map<std::uint64_t, double> walk_cache;
  const auto walk_probability = [&](std::uint64_t movable) {
    auto it = walk_cache.find(movable);
    if (it != walk_cache.end()) return it->second;
    std::uint64_t hits = 0;
    for_each_subset(d, m, [&](std::uint64_t r) { hits += (r & movable) == moved; });
    const double p = static_cast<double>(hits) / subsets;
    walk_cache.emplace(movable, p);
    return p;
  };

  KahanSum total;
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    double weight = 1.0;
    std::uint32_t x_weight = 0;
    std::uint64_t movable = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
      const State& s = states[i][pick[i]];
      weight *= s.weight;
      x_weight += s.high;
      if (s.high == (dir == Direction::down)) movable |= std::uint64_t{1} << i;
    }
    const std::uint32_t x_prime_weight = dir == Direction::up ? x_weight + t : x_weight - t;
    if (weight_in_middle_layers(x_weight, d, c, eps) &&
        weight_in_middle_layers(x_prime_weight, d, c, eps)) {
      total += weight * walk_probability(movable);
    }
    std::uint32_t i = 0;
    for (; i < d; ++i) {
      if (++pick[i] < states[i].size()) break;
      pick[i] = 0;
    }
    if (i == d) break;
  }
  return total.value();
}

double cube_walk_closed_form(std::uint32_t d, std::uint32_t lower_weight, std::uint32_t t,
                             std::uint32_t ell, Direction dir) {
  check_closed_form_args(d, lower_weight, t, ell);
  const std::uint32_t pool = dir == Direction::up ? lower_weight : d - lower_weight - t;
  return binomial(pool, ell - t) / binomial(d, ell);
}

Rational cube_walk_closed_form_exact(std::uint32_t d, std::uint32_t lower_weight,
                                     std::uint32_t t, std::uint32_t ell, Direction dir) {
  check_closed_form_args(d, lower_weight, t, ell);
  const std::uint32_t pool = dir == Direction::up ? lower_weight : d - lower_weight - t;
  return Rational(binomial_exact(pool, ell - t), binomial_exact(d, ell));
}

double reversibility_product(std::uint32_t d, std::uint32_t lower_weight, std::uint32_t t,
                             std::uint32_t ell) {
  check_closed_form_args(d, lower_weight, t, ell);
  const double e = static_cast<double>(lower_weight) - d / 2.0;
  double product = 1.0;
  for (std::uint32_t i = 0; i + t < ell; ++i) {
    product *= 1.0 + (2.0 * e + t) / (d / 2.0 - e - t - i);
  }
  return product;
}

std::vector<Rational> enumerate_cube_walk(std::uint32_t d, std::uint64_t start,
                                          std::uint32_t ell, Direction dir) {
  if (d > 20) throw ResourceError("cube walk enumeration supports d <= 20");
  const std::uint32_t m = selected_count(ell, d);
  std::vector<Rational> law(std::size_t{1} << d);
  const Rational each(1, binomial_exact(d, m));
  for_each_subset(d, m, [&](std::uint64_t r) {
    const std::uint64_t end = dir == Direction::up ? (start | r) : (start & ~r);
    law[end] += each;
  });
  return law;
}

double reversibility_length_cap(std::uint32_t d, double eps) {
  check_eps(eps);
  return std::sqrt(static_cast<double>(d)) / std::pow(std::log(d / eps), 5);
}

}  // namespace hgmono
