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

#include "hgmono/walks.hpp"

#include <algorithm>
#include <numeric>

#include "hgmono/errors.hpp"

namespace hgmono {
namespace {

// Partial Fisher-Yates: the first m entries of scratch.order become a uniform
// m-subset of [0, d).
std::span<const std::uint32_t> choose_coordinates(std::uint32_t d, std::uint32_t m,
                                                  Rng& rng, WalkScratch& scratch) {
  auto& order = scratch.order;
  order.resize(d);
  std::iota(order.begin(), order.end(), 0U);
  for (std::uint32_t j = 0; j < m; ++j) {
    const auto k = j + static_cast<std::uint32_t>(rng.below(d - j));
    std::swap(order[j], order[k]);
  }
  return std::span<const std::uint32_t>(order).first(m);
}

void require_dims(const GridShape& shape, std::span<const Coord> x) {
  if (x.size() != shape.d()) throw DomainError("point dimension does not match shape");
}

// Two distinct uniform positions (p, r) in [0, s).
std::pair<std::uint64_t, std::uint64_t> distinct_pair(std::uint64_t s, Rng& rng) {
  const std::uint64_t p = rng.below(s);
  std::uint64_t r = rng.below(s - 1);
  if (r >= p) ++r;
  return {p, r};
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::up ? "up" : "down"; }

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::direct: return "direct";
    case Formulation::cube_first: return "cube_first";
    case Formulation::cube_at_x: return "cube_at_x";
  }
  return "?";
}

std::size_t ShiftVector::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(delta.begin(), delta.end(), [](Coord c) { return c != 0; }));
}

std::optional<Point> ShiftVector::apply_up(const GridShape& shape,
                                           std::span<const Coord> w) const {
  Point out = Point::filled(shape.d(), 1);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::uint64_t v = std::uint64_t{w[i]} + delta[i];
    if (v > shape.n()) return std::nullopt;
    out[i] = static_cast<Coord>(v);
  }
  return out;
}

std::optional<Point> ShiftVector::apply_down(const GridShape& shape,
                                             std::span<const Coord> w) const {
  Point out = Point::filled(shape.d(), 1);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] >= w[i]) return std::nullopt;
    out[i] = w[i] - delta[i];
  }
  return out;
}

bool Hypercube::is_vertex(std::span<const Coord> x) const {
  if (x.size() != pairs.size()) return false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (x[i] != pairs[i].first && x[i] != pairs[i].second) return false;
  }
  return true;
}

std::uint32_t Hypercube::weight(std::span<const Coord> x) const {
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) w += x[i] == pairs[i].second;
  return w;
}

Coord sample_interval_target(const GridShape& shape, Coord x, Rng& rng) {
  const std::uint32_t levels = shape.log2n();
  if (levels == 0) return x;
  const std::uint64_t s = std::uint64_t{1} << (1 + rng.below(levels));
  // Position of x inside the interval, then a different position for c.
  const auto [o, p] = distinct_pair(s, rng);
  const std::int64_t offset = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(o);
  return wrap_coord(static_cast<std::int64_t>(x) + offset, shape.n());
}

void walk_into(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
               Direction dir, Rng& rng, std::span<Coord> out, WalkScratch& scratch) {
  if (out.data() != x.data()) std::copy(x.begin(), x.end(), out.begin());
  const std::uint32_t m = selected_count(tau, shape.d());
  if (m == 0) return;
  for (std::uint32_t r : choose_coordinates(shape.d(), m, rng, scratch)) {
    const Coord c = sample_interval_target(shape, x[r], rng);
    if (dir == Direction::up ? c > x[r] : c < x[r]) out[r] = c;
  }
}

Point sample_walk(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
                  Direction dir, Rng& rng) {
  require_dims(shape, x);
  shape.log2n();
  Point y(std::vector<Coord>(x.begin(), x.end()));
  WalkScratch scratch;
  walk_into(shape, x, tau, dir, rng, y.coords(), scratch);
  return y;
}

Point sample_upwalk(const GridShape& shape, std::span<const Coord> x, std::uint32_t tau,
                    Rng& rng) {
  return sample_walk(shape, x, tau, Direction::up, rng);
}

Point sample_downwalk(const GridShape& shape, std::span<const Coord> y,
                      std::uint32_t tau, Rng& rng) {
  return sample_walk(shape, y, tau, Direction::down, rng);
}

ShiftVector sample_upshift(const GridShape& shape, std::span<const Coord> x,
                           std::uint32_t tau, Rng& rng) {
  const Point y = sample_upwalk(shape, x, tau, rng);
  ShiftVector s{std::vector<Coord>(shape.d())};
  for (std::uint32_t i = 0; i < shape.d(); ++i) s.delta[i] = y[i] - x[i];
  return s;
}

ShiftVector sample_downshift(const GridShape& shape, std::span<const Coord> x,
                             std::uint32_t tau, Rng& rng) {
  const Point y = sample_downwalk(shape, x, tau, rng);
  ShiftVector s{std::vector<Coord>(shape.d())};
  for (std::uint32_t i = 0; i < shape.d(); ++i) s.delta[i] = x[i] - y[i];
  return s;
}

Hypercube sample_hypercube(const GridShape& shape, Rng& rng) {
  const std::uint32_t levels = shape.log2n();
  if (levels == 0) throw DomainError("sub-hypercubes need n >= 2");
  Hypercube cube;
  cube.pairs.reserve(shape.d());
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    const std::uint64_t s = std::uint64_t{1} << (1 + rng.below(levels));
    const auto start = static_cast<std::int64_t>(rng.below(shape.n()) + 1);
    const auto [p, r] = distinct_pair(s, rng);
    const Coord u = wrap_coord(start + static_cast<std::int64_t>(p), shape.n());
    const Coord v = wrap_coord(start + static_cast<std::int64_t>(r), shape.n());
    cube.pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  return cube;
}

Hypercube sample_hypercube_at(const GridShape& shape, std::span<const Coord> x,
                              Rng& rng) {
  require_dims(shape, x);
  if (shape.log2n() == 0) throw DomainError("sub-hypercubes need n >= 2");
  Hypercube cube;
  cube.pairs.reserve(shape.d());
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    const Coord c = sample_interval_target(shape, x[i], rng);
    cube.pairs.emplace_back(std::min(x[i], c), std::max(x[i], c));
  }
  return cube;
}

Point sample_hypercube_walk(const Hypercube& cube, std::span<const Coord> x,
                            std::uint32_t tau, Direction dir, Rng& rng) {
  if (!cube.is_vertex(x)) throw DomainError("walk start is not a vertex of the cube");
  Point y(std::vector<Coord>(x.begin(), x.end()));
  WalkScratch scratch;
  const std::uint32_t m = selected_count(tau, cube.d());
  for (std::uint32_t r : choose_coordinates(cube.d(), m, rng, scratch)) {
    const auto [a, b] = cube.pairs[r];
    if (dir == Direction::up && x[r] == a) y[r] = b;
    if (dir == Direction::down && x[r] == b) y[r] = a;
  }
  return y;
}

Point sample_uniform_point(const GridShape& shape, Rng& rng) {
  Point x = Point::filled(shape.d(), 1);
  for (auto& c : x.coords()) c = static_cast<Coord>(rng.below(shape.n()) + 1);
  return x;
}

std::pair<Point, Point> sample_walk_pair(const GridShape& shape, std::uint32_t tau,
                                         Direction dir, Formulation form, Rng& rng) {
  switch (form) {
    case Formulation::direct: {
      Point x = sample_uniform_point(shape, rng);
      Point y = sample_walk(shape, x, tau, dir, rng);
      return {std::move(x), std::move(y)};
    }
    case Formulation::cube_first: {
      const Hypercube cube = sample_hypercube(shape, rng);
      Point x = Point::filled(shape.d(), 1);
      for (std::uint32_t i = 0; i < shape.d(); ++i) {
        x[i] = rng.below(2) == 0 ? cube.pairs[i].first : cube.pairs[i].second;
      }
      Point y = sample_hypercube_walk(cube, x, tau, dir, rng);
      return {std::move(x), std::move(y)};
    }
    case Formulation::cube_at_x: {
      Point x = sample_uniform_point(shape, rng);
      const Hypercube cube = sample_hypercube_at(shape, x, rng);
      Point y = sample_hypercube_walk(cube, x, tau, dir, rng);
      return {std::move(x), std::move(y)};
    }
  }
  throw DomainError("unknown formulation");
}

}  // namespace hgmono
