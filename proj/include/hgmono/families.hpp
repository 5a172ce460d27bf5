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

#ifndef HGMONO_FAMILIES_HPP_
#define HGMONO_FAMILIES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/oracle.hpp"
#include "hgmono/rng.hpp"

namespace hgmono {

enum class Family {
  constant0,
  constant1,
  dictator,            // f(x) = [x_i > t]
  anti_dictator,       // f(x) = [x_i <= t]
  majority_threshold,  // f(x) = [sum_i (x_i - 1) >= t]
  surface,             // hard instance with a large surface matching
  random_balanced,     // independent fair bit per point
  random_monotone,     // up-closure of a few random generator points
  explicit_table,      // truth table loaded from a file
};

// Parameters for make_family. Zero-valued parameters select the defaults
// documented on each field.
struct FamilySpec {
  Family family = Family::constant0;
  // Dictator coordinate, 1-based. Default 1.
  std::uint32_t coord = 1;
  // Dictator threshold t (default n/2) or majority threshold (default
  // ceil(d(n-1)/2)). Negative selects the default.
  std::int64_t threshold = -1;
  // Seed for surface interior bits, random_balanced and random_monotone.
  std::uint64_t seed = 0;
  // Number of generators for random_monotone. Default 4.
  std::uint32_t generators = 0;
  // Truth-table path for explicit_table.
  std::string path;
};

// Throws ConfigError for an unknown name.
Family parse_family(std::string_view name);
std::string_view family_name(Family f);
bool family_is_monotone(Family f);

// Throws ConfigError when the parameters do not fit the shape.
FunctionOracle make_family(const FamilySpec& spec, const GridShape& shape);

// The surface construction is meant for n <= d / ln d; outside that regime
// it is still well defined, but its interior is no longer negligible.
bool surface_regime_holds(const GridShape& shape);

// Deterministic pseudo-random bit of a point under a seed.
bool point_hash_bit(std::uint64_t seed, std::span<const Coord> x);

// g(x) = 1 - f(xbar) with xbar_i = n + 1 - x_i.
FunctionOracle doubly_flip(const FunctionOracle& f);

// Per-axis reindexing sets: axes[i] holds k values of [n], non-decreasing.
using Subgrid = std::vector<std::vector<Coord>>;

// g(z) = f(T_1[z_1], ..., T_d[z_d]) on [k]^d. Throws DomainError when an
// axis is unsorted, has the wrong length, or leaves [n].
FunctionOracle restrict_to_subgrid(const FunctionOracle& f, Subgrid axes);

// T_i = k independent uniform samples of [n], sorted.
Subgrid sample_subgrid(const GridShape& shape, std::uint32_t k, Rng& rng);

// T_i = [n] in order.
Subgrid identity_subgrid(const GridShape& shape);

// Maps a point of the restricted grid back to the original grid.
Point lift_point(const Subgrid& axes, std::span<const Coord> z);

}  // namespace hgmono

#endif  // HGMONO_FAMILIES_HPP_
