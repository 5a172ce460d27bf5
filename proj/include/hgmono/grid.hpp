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

#ifndef HGMONO_GRID_HPP_
#define HGMONO_GRID_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hgmono {

using Coord = std::uint32_t;
using PointIndex = std::uint64_t;

// The hypergrid [n]^d. Walks and the tester need n to be a power of two;
// the exact oracles (distance, violation graphs) work for any side length,
// so a general shape can be requested explicitly.
class GridShape {
 public:
  // Throws DomainError unless n is a power of two and d >= 1.
  GridShape(std::uint32_t n, std::uint32_t d);

  // Any n >= 1. Sampling operations reject non-dyadic shapes.
  static GridShape general(std::uint32_t n, std::uint32_t d);

  std::uint32_t n() const { return n_; }
  std::uint32_t d() const { return d_; }
  bool dyadic() const { return log2n_.has_value(); }
  // log2(n); throws DomainError for a non-dyadic shape.
  std::uint32_t log2n() const;

  // n^d, or nullopt when it overflows 64 bits (symbolic-only shapes).
  std::optional<std::uint64_t> try_size() const;
  // n^d; throws ResourceError when it overflows.
  std::uint64_t size() const;

  std::string to_string() const;

  friend bool operator==(const GridShape&, const GridShape&) = default;

 private:
  struct Unchecked {};
  GridShape(std::uint32_t n, std::uint32_t d, Unchecked);

  std::uint32_t n_;
  std::uint32_t d_;
  std::optional<std::uint32_t> log2n_;
};

// A point of [n]^d. Coordinates are 1-based values; dimensions are 0-based
// positions in the vector (dimension 0 is coordinate 1 in 1-based numbering).
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Coord> coords) : coords_(coords) {}
  // The point (v, v, ..., v).
  static Point filled(std::uint32_t d, Coord v) {
    return Point(std::vector<Coord>(d, v));
  }

  std::size_t size() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  Coord& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  std::span<const Coord> coords() const { return coords_; }
  std::span<Coord> coords() { return coords_; }
  operator std::span<const Coord>() const { return coords_; }

  bool valid_for(const GridShape& shape) const;
  std::string to_string() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Coord> coords_;
};

// Mixed-radix index, coordinate 1 least significant:
// sum_i (x_i - 1) * n^(i-1). Throws DomainError on an out-of-range point.
PointIndex index_of(const GridShape& shape, std::span<const Coord> x);
Point point_of(const GridShape& shape, PointIndex index);
// Writes the point into `out` (size d) without allocating.
void point_of(const GridShape& shape, PointIndex index, std::span<Coord> out);

enum class Comparison { incomparable, x_below_y, y_below_x, equal };

// Coordinatewise order. Throws DomainError if the lengths differ.
Comparison comparable(std::span<const Coord> x, std::span<const Coord> y);

// x <= y coordinatewise (lengths assumed equal).
bool precedes(std::span<const Coord> x, std::span<const Coord> y);

const char* to_string(Comparison c);

}  // namespace hgmono

#endif  // HGMONO_GRID_HPP_
