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

#ifndef HGMONO_WALK_PMF_HPP_
#define HGMONO_WALK_PMF_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/walks.hpp"

namespace hgmono {

struct WalkSpec {
  Direction direction = Direction::up;
  std::uint32_t tau = 1;
};

// Elementary-term budget for exact enumerations.
inline constexpr std::uint64_t kDefaultPmfBudget = 100'000'000;

// Number of size-s windows of Z_n that contain both u and v (u != v).
std::uint64_t windows_containing_both(std::uint32_t n, std::uint64_t s, Coord u, Coord v);

// Law of the final value of one selected coordinate sitting at u, from the
// closed forms: moved values use the window count above, the lazy mass counts
// interval members on the wrong side of u. Index 0 is unused.
std::vector<double> coordinate_step_law(std::uint32_t n, Coord u, Direction dir);

// Law of the partner c of u in the conditioned sub-hypercube law, by
// enumerating (q, interval, c). Index 0 is unused.
std::vector<double> partner_law(std::uint32_t n, Coord u);

// Law of (a, b) in the unconditioned sub-hypercube law, by enumerating
// (q, interval start, pair). Entry a * (n + 1) + b.
std::vector<double> cube_pair_law(std::uint32_t n);

// Exact law of a walk endpoint from a fixed anchor, dense over point indices.
class WalkPmf {
 public:
  WalkPmf(GridShape shape, Point anchor, WalkSpec spec, std::vector<double> table);

  const GridShape& shape() const { return shape_; }
  const Point& anchor() const { return anchor_; }
  const WalkSpec& spec() const { return spec_; }
  std::span<const double> table() const { return table_; }

  double operator()(std::span<const Coord> y) const { return table_[index_of(shape_, y)]; }
  double at(PointIndex i) const { return table_[i]; }

  double total_mass() const;
  double max_abs_diff(const WalkPmf& other) const;

  // Rows "point_index,probability" for the non-zero entries.
  void write_csv(std::ostream& out) const;

 private:
  GridShape shape_;
  Point anchor_;
  WalkSpec spec_;
  std::vector<double> table_;
};

// Throws ResourceError when n^d * d * (min(tau,d) + 1) exceeds the budget.
WalkPmf exact_pmf(const GridShape& shape, std::span<const Coord> x, const WalkSpec& spec,
                  Formulation form, std::uint64_t budget = kDefaultPmfBudget);

// Joint law of (x, y), entry index_of(x) * n^d + index_of(y).
std::vector<double> exact_joint_pmf(const GridShape& shape, const WalkSpec& spec,
                                    Formulation form,
                                    std::uint64_t budget = kDefaultPmfBudget);

// Law of the start vertex x when H is drawn first and x uniformly from H.
std::vector<double> cube_first_start_marginal(const GridShape& shape);

}  // namespace hgmono

#endif  // HGMONO_WALK_PMF_HPP_
