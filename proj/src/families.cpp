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

#include "hgmono/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hgmono/errors.hpp"
#include "hgmono/truth_table.hpp"

namespace hgmono {
namespace {

constexpr std::array<std::pair<std::string_view, Family>, 9> kNames{{
    {"constant0", Family::constant0},
    {"constant1", Family::constant1},
    {"dictator", Family::dictator},
    {"anti_dictator", Family::anti_dictator},
    {"majority_threshold", Family::majority_threshold},
    {"surface", Family::surface},
    {"random_balanced", Family::random_balanced},
    {"random_monotone", Family::random_monotone},
    {"explicit", Family::explicit_table},
}};

std::uint32_t checked_coord(const FamilySpec& spec, const GridShape& shape) {
  if (spec.coord < 1 || spec.coord > shape.d()) {
    throw ConfigError("dictator coordinate " + std::to_string(spec.coord) +
                      " outside [1," + std::to_string(shape.d()) + "]");
  }
  return spec.coord - 1;
}

Coord dictator_threshold(const FamilySpec& spec, const GridShape& shape) {
  if (spec.threshold < 0) return shape.n() / 2;
  if (spec.threshold > shape.n()) {
    throw ConfigError("dictator threshold exceeds n");
  }
  return static_cast<Coord>(spec.threshold);
}

}  // namespace

Family parse_family(std::string_view name) {
  for (const auto& [key, fam] : kNames) {
    if (key == name) return fam;
  }
  throw ConfigError("unknown function family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  for (const auto& [key, fam] : kNames) {
    if (fam == f) return key;
  }
  return "?";
}

bool family_is_monotone(Family f) {
  switch (f) {
    case Family::constant0:
    case Family::constant1:
    case Family::dictator:
    case Family::majority_threshold:
    case Family::random_monotone:
      return true;
    default:
      return false;
  }
}

bool point_hash_bit(std::uint64_t seed, std::span<const Coord> x) {
  std::uint64_t h = mix64(seed ^ 0x5ca1ab1eULL);
  for (Coord c : x) h = mix64(h ^ c);
  return (h >> 63) != 0;
}

bool surface_regime_holds(const GridShape& shape) {
  const double d = shape.d();
  if (d < 3) return false;
  return static_cast<double>(shape.n()) <= d / std::log(d);
}

FunctionOracle make_family(const FamilySpec& spec, const GridShape& shape) {
  const std::string name(family_name(spec.family));
  switch (spec.family) {
    case Family::constant0:
      return FunctionOracle(shape, [](std::span<const Coord>) { return false; }, name);
    case Family::constant1:
      return FunctionOracle(shape, [](std::span<const Coord>) { return true; }, name);
    case Family::dictator: {
      const std::uint32_t i = checked_coord(spec, shape);
      const Coord t = dictator_threshold(spec, shape);
      return FunctionOracle(
          shape, [i, t](std::span<const Coord> x) { return x[i] > t; }, name);
    }
    case Family::anti_dictator: {
      const std::uint32_t i = checked_coord(spec, shape);
      const Coord t = dictator_threshold(spec, shape);
      return FunctionOracle(
          shape, [i, t](std::span<const Coord> x) { return x[i] <= t; }, name);
    }
    case Family::majority_threshold: {
      const std::uint64_t span_total =
          static_cast<std::uint64_t>(shape.d()) * (shape.n() - 1);
      const std::uint64_t t = spec.threshold < 0
                                  ? (span_total + 1) / 2
                                  : static_cast<std::uint64_t>(spec.threshold);
      return FunctionOracle(
          shape,
          [t](std::span<const Coord> x) {
            std::uint64_t s = 0;
            for (Coord c : x) s += c - 1;
            return s >= t;
          },
          name);
    }
    case Family::surface: {
      const Coord n = shape.n();
      const std::uint64_t seed = spec.seed;
      return FunctionOracle(
          shape,
          [n, seed](std::span<const Coord> x) {
            for (Coord c : x) {
              if (c == 1) return true;
              if (c == n) return false;
            }
            return point_hash_bit(seed, x);
          },
          name);
    }
    case Family::random_balanced: {
      const std::uint64_t seed = spec.seed;
      return FunctionOracle(
          shape, [seed](std::span<const Coord> x) { return point_hash_bit(seed, x); },
          name);
    }
    case Family::random_monotone: {
      const std::uint32_t count = spec.generators == 0 ? 4 : spec.generators;
      Rng rng = Rng::stream(spec.seed, 0x6d6f6e6fULL, 0);
      std::vector<Point> gens;
      gens.reserve(count);
      for (std::uint32_t g = 0; g < count; ++g) {
        Point p = Point::filled(shape.d(), 1);
        for (auto& c : p.coords()) c = static_cast<Coord>(rng.below(shape.n()) + 1);
        gens.push_back(std::move(p));
      }
      return FunctionOracle(
          shape,
          [gens = std::move(gens)](std::span<const Coord> x) {
            return std::any_of(gens.begin(), gens.end(),
                               [&](const Point& g) { return precedes(g, x); });
          },
          name);
    }
    case Family::explicit_table: {
      if (spec.path.empty()) throw ConfigError("explicit family needs a table path");
      ExplicitFunction table = load_truth_table(spec.path);
      if (!(table.shape() == shape)) {
        throw ConfigError("table shape " + table.shape().to_string() +
                          " does not match " + shape.to_string());
      }
      return table.as_oracle(name);
    }
  }
  throw ConfigError("unhandled family");
}

FunctionOracle doubly_flip(const FunctionOracle& f) {
  const Coord n = f.shape().n();
  return FunctionOracle(
      f.shape(),
      [f, n](std::span<const Coord> x) {
        thread_local std::vector<Coord> flipped;
        flipped.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) flipped[i] = n + 1 - x[i];
        return !f.eval(flipped);
      },
      "flip(" + f.name() + ")");
}

FunctionOracle restrict_to_subgrid(const FunctionOracle& f, Subgrid axes) {
  const GridShape& shape = f.shape();
  if (axes.size() != shape.d()) {
    throw DomainError("subgrid needs one axis per dimension");
  }
  const std::size_t k = axes.front().size();
  if (k == 0 || k > UINT32_MAX) throw DomainError("subgrid axes must be non-empty");
  for (const auto& axis : axes) {
    if (axis.size() != k) throw DomainError("subgrid axes differ in length");
    if (!std::is_sorted(axis.begin(), axis.end())) {
      throw DomainError("subgrid axis is not sorted non-decreasing");
    }
    if (axis.front() < 1 || axis.back() > shape.n()) {
      throw DomainError("subgrid axis leaves [1,n]");
    }
  }
  const auto k32 = static_cast<std::uint32_t>(k);
  GridShape restricted = std::has_single_bit(k32) ? GridShape(k32, shape.d())
                                                  : GridShape::general(k32, shape.d());
  return FunctionOracle(
      restricted,
      [f, axes = std::move(axes)](std::span<const Coord> z) {
        thread_local std::vector<Coord> lifted;
        lifted.resize(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) lifted[i] = axes[i][z[i] - 1];
        return f.eval(lifted);
      },
      f.name() + "|T");
}

Subgrid sample_subgrid(const GridShape& shape, std::uint32_t k, Rng& rng) {
  if (k == 0) throw DomainError("subgrid size k must be positive");
  Subgrid axes(shape.d(), std::vector<Coord>(k));
  for (auto& axis : axes) {
    for (auto& v : axis) v = static_cast<Coord>(rng.below(shape.n()) + 1);
    std::sort(axis.begin(), axis.end());
  }
  return axes;
}

Subgrid identity_subgrid(const GridShape& shape) {
  Subgrid axes(shape.d(), std::vector<Coord>(shape.n()));
  for (auto& axis : axes) {
    for (Coord v = 1; v <= shape.n(); ++v) axis[v - 1] = v;
  }
  return axes;
}

Point lift_point(const Subgrid& axes, std::span<const Coord> z) {
  Point p = Point::filled(static_cast<std::uint32_t>(z.size()), 1);
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = axes[i][z[i] - 1];
  return p;
}

}  // namespace hgmono
