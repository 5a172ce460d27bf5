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

#ifndef HGMONO_LAYERS_HPP_
#define HGMONO_LAYERS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/walk_pmf.hpp"
#include "hgmono/walks.hpp"

namespace hgmono {

// sqrt(4 c d ln(d / eps)). Throws DomainError unless eps is in (0, 1).
double middle_layer_halfwidth(std::uint32_t d, double c, double eps);

// |w - d/2| <= halfwidth.
bool weight_in_middle_layers(std::uint32_t weight, std::uint32_t d, double c, double eps);

// Whether x lies in the c-middle layers of H. Throws DomainError if x is
// not a vertex of H.
bool middle_layer_member(const Hypercube& cube, std::span<const Coord> x, double c,
                         double eps);

// Fraction of {0,1}^d inside the c-middle layers (exact binomial sum).
double middle_layer_fraction(std::uint32_t d, double c, double eps);

inline constexpr double kRestrictedLayerC = 100.0;

// p_{x,l}(x'): expectation over H ~ H(x) of the indicator that x and x' both
// lie in the c-middle layers of H, times the probability that the l-step cube
// walk from x lands on x'. Direction is up when x <= x', down when x' <= x.
// Throws DomainError for incomparable points, ResourceError over budget.
double restricted_walk_pdf(const GridShape& shape, std::span<const Coord> x,
                           std::span<const Coord> x_prime, std::uint32_t ell, double eps,
                           double c = kRestrictedLayerC,
                           std::uint64_t budget = kDefaultPmfBudget);

// Probability that an l-step cube walk lands on a fixed point at Hamming
// distance t. For the up walk `lower_weight` is the weight of the start; for
// the down walk it is the weight of the endpoint, so the start has weight
// lower_weight + t. Throws DomainError unless t <= l <= d and
// lower_weight + t <= d.
double cube_walk_closed_form(std::uint32_t d, std::uint32_t lower_weight, std::uint32_t t,
                             std::uint32_t ell, Direction dir);
Rational cube_walk_closed_form_exact(std::uint32_t d, std::uint32_t lower_weight,
                                     std::uint32_t t, std::uint32_t ell, Direction dir);

// prod_{i < l - t} (1 + (2e + t) / (d/2 - e - t - i)) with e = lower_weight - d/2.
double reversibility_product(std::uint32_t d, std::uint32_t lower_weight, std::uint32_t t,
                             std::uint32_t ell);

// Exact law of the l-step walk on {0,1}^d from `start` (bit i = coordinate i),
// by enumerating every coordinate subset R. Entry = endpoint bitmask.
std::vector<Rational> enumerate_cube_walk(std::uint32_t d, std::uint64_t start,
                                          std::uint32_t ell, Direction dir);

// Largest l permitted by the reversibility statement: sqrt(d) / ln^5(d/eps).
double reversibility_length_cap(std::uint32_t d, double eps);

}  // namespace hgmono

#endif  // HGMONO_LAYERS_HPP_
