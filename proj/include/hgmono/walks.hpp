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

#ifndef HGMONO_WALKS_HPP_
#define HGMONO_WALKS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/rng.hpp"

namespace hgmono {

enum class Direction { up, down };

// Which of the three equivalent ways of drawing a walk pair (x, y) to use:
//   direct     x uniform, y from the hypergrid walk at x
//   cube_first H from the sub-hypercube law, x uniform in H, y from the cube walk
//   cube_at_x  x uniform, H from the sub-hypercube law conditioned on x,
//              y from the cube walk
enum class Formulation { direct, cube_first, cube_at_x };

const char* to_string(Direction d);
const char* to_string(Formulation f);

// Number of coordinates a walk of length tau selects: min(tau, d).
constexpr std::uint32_t selected_count(std::uint32_t tau, std::uint32_t d) {
  return tau < d ? tau : d;
}

// Maps any integer in (-n, 2n] onto Z_n represented as [1, n].
constexpr Coord wrap_coord(std::int64_t v, std::uint32_t n) {
  const std::int64_t m = ((v - 1) % n + n) % n;
  return static_cast<Coord>(m + 1);
}

// Displacement magnitudes of a walk: y - x for up-shifts, x - y for down.
struct ShiftVector {
  std::vector<Coord> delta;

  std::size_t nonzero_count() const;
  // w + delta, or nullopt when that leaves [n]^d.
  std::optional<Point> apply_up(const GridShape& shape, std::span<const Coord> w) const;
  // w - delta, or nullopt when that leaves [n]^d.
  std::optional<Point> apply_down(const GridShape& shape, std::span<const Coord> w) const;
};

// prod_i {a_i, b_i} with a_i < b_i.
struct Hypercube {
  std::vector<std::pair<Coord, Coord>> pairs;

  std::uint32_t d() const { return static_cast<std::uint32_t>(pairs.size()); }
  bool is_vertex(std::span<const Coord> x) const;
  // Number of coordinates where x sits at b_i. x must be a vertex.
  std::uint32_t weight(std::span<const Coord> x) const;
};

// One coordinate of the hypergrid walk: q uniform in {1..log n}, a uniform
// wrap-around interval of size 2^q containing x, and c uniform in it minus x.
Coord sample_interval_target(const GridShape& shape, Coord x, Rng& rng);

// Reusable buffers for the allocation-free walk kernels.
struct WalkScratch {
  std::vector<std::uint32_t> order;
};

// Lazy walk of length tau from x, written into out (which may alias x).
void walk_into(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
               Direction dir, Rng& rng, std::span<Coord> out, WalkScratch& scratch);

Point sample_upwalk(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
                    Rng& rng);
Point sample_downwalk(const GridShape& shape, std::span<const Coord> y,
                      std::uint32_t tau, Rng& rng);
Point sample_walk(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
                  Direction dir, Rng& rng);

ShiftVector sample_upshift(const GridShape& shape, std::span<const Coord> x,
                           std::uint32_t tau, Rng& rng);
ShiftVector sample_downshift(const GridShape& shape, std::span<const Coord> x,
                             std::uint32_t tau, Rng& rng);

// Sub-hypercube law: per coordinate, a uniform interval of size 2^q in Z_n
// and a uniform pair a < b from it.
Hypercube sample_hypercube(const GridShape& shape, Rng& rng);
// Conditioned law: the interval contains x_i, c_i uniform in it minus x_i,
// and (a_i, b_i) = (min, max)(x_i, c_i).
Hypercube sample_hypercube_at(const GridShape& shape, std::span<const Coord> x, Rng& rng);

// Walk on the vertices of H. Throws DomainError if x is not a vertex.
Point sample_hypercube_walk(const Hypercube& cube, std::span<const Coord> x,
                            std::uint32_t tau, Direction dir, Rng& rng);

// One (x, y) pair from the chosen formulation.
std::pair<Point, Point> sample_walk_pair(const GridShape& shape, std::uint32_t tau,
                                         Direction dir, Formulation form, Rng& rng);

Point sample_uniform_point(const GridShape& shape, Rng& rng);

}  // namespace hgmono

#endif  // HGMONO_WALKS_HPP_
