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

#include "hgmono/grid.hpp"

#include <bit>
#include <sstream>

#include "hgmono/errors.hpp"

namespace hgmono {

GridShape::GridShape(std::uint32_t n, std::uint32_t d, Unchecked)
    : n_(n), d_(d) {
  if (std::has_single_bit(n)) {
    log2n_ = static_cast<std::uint32_t>(std::countr_zero(n));
  }
}

GridShape::GridShape(std::uint32_t n, std::uint32_t d)
    : GridShape(n, d, Unchecked{}) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw DomainError("side length n=" + std::to_string(n) +
                      " is not a power of two");
  }
  if (d == 0) throw DomainError("dimension d must be positive");
}

GridShape GridShape::general(std::uint32_t n, std::uint32_t d) {
  if (n == 0) throw DomainError("side length n must be positive");
  if (d == 0) throw DomainError("dimension d must be positive");
  return GridShape(n, d, Unchecked{});
}

std::uint32_t GridShape::log2n() const {
  if (!log2n_) {
    throw DomainError("operation needs n to be a power of two, got n=" +
                      std::to_string(n_));
  }
  return *log2n_;
}

std::optional<std::uint64_t> GridShape::try_size() const {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (n_ != 0 && total > UINT64_MAX / n_) return std::nullopt;
    total *= n_;
  }
  return total;
}

std::uint64_t GridShape::size() const {
  auto s = try_size();
  if (!s) throw ResourceError("n^d overflows 64 bits for " + to_string());
  return *s;
}

std::string GridShape::to_string() const {
  return "[" + std::to_string(n_) + "]^" + std::to_string(d_);
}

bool Point::valid_for(const GridShape& shape) const {
  if (coords_.size() != shape.d()) return false;
  for (Coord c : coords_) {
    if (c < 1 || c > shape.n()) return false;
  }
  return true;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

PointIndex index_of(const GridShape& shape, std::span<const Coord> x) {
  if (x.size() != shape.d()) {
    throw DomainError("point has " + std::to_string(x.size()) +
                      " coordinates, shape needs " + std::to_string(shape.d()));
  }
  PointIndex index = 0;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] < 1 || x[i] > shape.n()) {
      throw DomainError("coordinate " + std::to_string(i + 1) + " = " +
                        std::to_string(x[i]) + " outside [1," +
                        std::to_string(shape.n()) + "]");
    }
    index = index * shape.n() + (x[i] - 1);
  }
  return index;
}

void point_of(const GridShape& shape, PointIndex index, std::span<Coord> out) {
  const std::uint32_t n = shape.n();
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    out[i] = static_cast<Coord>(index % n) + 1;
    index /= n;
  }
}

Point point_of(const GridShape& shape, PointIndex index) {
  if (auto s = shape.try_size(); s && index >= *s) {
    throw DomainError("point index " + std::to_string(index) +
                      " outside the grid " + shape.to_string());
  }
  Point p = Point::filled(shape.d(), 1);
  point_of(shape, index, p.coords());
  return p;
}

Comparison comparable(std::span<const Coord> x, std::span<const Coord> y) {
  if (x.size() != y.size()) {
    throw DomainError("cannot compare points of different dimension");
  }
  bool some_less = false;
  bool some_greater = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    some_less |= x[i] < y[i];
    some_greater |= x[i] > y[i];
  }
  if (some_less && some_greater) return Comparison::incomparable;
  if (some_less) return Comparison::x_below_y;
  if (some_greater) return Comparison::y_below_x;
  return Comparison::equal;
}

bool precedes(std::span<const Coord> x, std::span<const Coord> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::incomparable: return "incomparable";
    case Comparison::x_below_y: return "x_below_y";
    case Comparison::y_below_x: return "y_below_x";
    case Comparison::equal: return "equal";
  }
  return "?";
}

}  // namespace hgmono
