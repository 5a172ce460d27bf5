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

#include "hgmono/walk_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "hgmono/errors.hpp"
#include "hgmono/numeric.hpp"

namespace hgmono {
namespace {

// Per-coordinate factors: `selected[v]` when the coordinate is in R,
// `unselected[v]` otherwise, for final value v.
struct Kernel {
  std::vector<double> selected;
  std::vector<double> unselected;
};

std::uint32_t levels_of(std::uint32_t n) {
  return GridShape(n, 1).log2n();
}

bool toward(Direction dir, Coord from, Coord to) {
  return dir == Direction::up ? to > from : to < from;
}

// Interval members on the non-moving side of u, summed over the s windows
// through u. o is the position of u inside the window.
std::uint64_t lazy_members(std::uint32_t n, std::uint64_t s, Coord u, Direction dir) {
  std::uint64_t total = 0;
  const auto ni = static_cast<std::int64_t>(n);
  const auto ui = static_cast<std::int64_t>(u);
  const auto si = static_cast<std::int64_t>(s);
  for (std::int64_t o = 0; o < si; ++o) {
    if (dir == Direction::up) {
      total += static_cast<std::uint64_t>(std::min(o, ui - 1) +
                                          std::max<std::int64_t>(0, ui - o + si - 1 - ni));
    } else {
      total += static_cast<std::uint64_t>(std::min(si - 1 - o, ni - ui) +
                                          std::max<std::int64_t>(0, o - ui + 1));
    }
  }
  return total;
}

std::vector<double> point_mass(std::uint32_t n, Coord u) {
  std::vector<double> v(n + 1, 0.0);
  v[u] = 1.0;
  return v;
}

std::vector<Kernel> build_kernels(std::uint32_t n, Direction dir, Formulation form) {
  std::vector<Kernel> kernels(n + 1);
  if (n == 1) {
    kernels[1] = Kernel{point_mass(1, 1), point_mass(1, 1)};
    return kernels;
  }
  std::vector<double> pairs;
  if (form == Formulation::cube_first) pairs = cube_pair_law(n);
  const auto pair_at = [&](Coord a, Coord b) { return pairs[a * (n + 1) + b]; };
  for (Coord u = 1; u <= n; ++u) {
    Kernel& k = kernels[u];
    switch (form) {
      case Formulation::direct:
        k.selected = coordinate_step_law(n, u, dir);
        k.unselected = point_mass(n, u);
        break;
      case Formulation::cube_at_x: {
        const std::vector<double> partner = partner_law(n, u);
        k.selected.assign(n + 1, 0.0);
        KahanSum stay;
        for (Coord c = 1; c <= n; ++c) {
          if (c == u) continue;
          if (toward(dir, u, c)) {
            k.selected[c] = partner[c];
          } else {
            stay += partner[c];
          }
        }
        k.selected[u] = stay.value();
        k.unselected = point_mass(n, u);
        break;
      }
      case Formulation::cube_first: {
        // Joint weights: the cube contains u and x picks u from it.
        k.selected.assign(n + 1, 0.0);
        KahanSum stay;
        KahanSum member;
        for (Coord c = 1; c <= n; ++c) {
          if (c == u) continue;
          const double w = c > u ? pair_at(u, c) / 2.0 : pair_at(c, u) / 2.0;
          member += w;
          if (toward(dir, u, c)) {
            k.selected[c] = w;
          } else {
            stay += w;
          }
        }
        k.selected[u] = stay.value();
        k.unselected.assign(n + 1, 0.0);
        k.unselected[u] = member.value();
        break;
      }
    }
  }
  return kernels;
}

void check_budget(std::uint64_t terms, std::uint64_t budget, const char* what) {
  if (terms > budget) {
    throw ResourceError(std::string(what) + " needs " + std::to_string(terms) +
                        " terms, budget is " + std::to_string(budget));
  }
}

std::uint64_t row_terms(const GridShape& shape, std::uint32_t m) {
  const std::uint64_t per_point = std::uint64_t{shape.d()} * (m + 1);
  const auto size = shape.try_size();
  if (!size || *size > UINT64_MAX / per_point) return UINT64_MAX;
  return *size * per_point;
}

// Fills out[y] = sum over m-subsets R of prod_i factor_i(y_i) / C(d, m).
void fill_row(const GridShape& shape, std::span<const Coord> x,
              const std::vector<Kernel>& kernels, std::uint32_t m, std::span<double> out) {
  const std::uint32_t d = shape.d();
  const double subsets = binomial(d, m);
  std::vector<Coord> y(d, 1);
  std::vector<double> e(m + 1);
  for (PointIndex idx = 0; idx < out.size(); ++idx) {
    std::fill(e.begin(), e.end(), 0.0);
    e[0] = 1.0;
    bool alive = true;
    for (std::uint32_t i = 0; i < d && alive; ++i) {
      const Kernel& k = kernels[x[i]];
      const double a = k.selected[y[i]];
      const double b = k.unselected[y[i]];
      if (a == 0.0 && b == 0.0) {
        alive = false;
        break;
      }
      for (std::uint32_t j = std::min(i + 1, m); j >= 1; --j) e[j] = e[j] * b + e[j - 1] * a;
      e[0] *= b;
    }
    out[idx] = alive ? e[m] / subsets : 0.0;
    for (std::uint32_t i = 0; i < d; ++i) {
      if (++y[i] <= shape.n()) break;
      y[i] = 1;
    }
  }
}

}  // namespace

std::uint64_t windows_containing_both(std::uint32_t n, std::uint64_t s, Coord u, Coord v) {
  if (u == v) return s;
  const std::uint64_t delta = (v + n - u) % n;
  const auto part = [s](std::uint64_t gap) { return gap < s ? s - gap : 0; };
  return part(delta) + part(n - delta);
}

std::vector<double> coordinate_step_law(std::uint32_t n, Coord u, Direction dir) {
  if (u < 1 || u > n) throw DomainError("coordinate outside [1,n]");
  if (n == 1) return point_mass(1, 1);
  const std::uint32_t levels = levels_of(n);
  std::vector<KahanSum> acc(n + 1);
  for (std::uint32_t q = 1; q <= levels; ++q) {
    const std::uint64_t s = std::uint64_t{1} << q;
    const double w = 1.0 / (static_cast<double>(levels) * static_cast<double>(s) *
                            static_cast<double>(s - 1));
    for (Coord v = 1; v <= n; ++v) {
      if (v != u && toward(dir, u, v)) {
        acc[v] += static_cast<double>(windows_containing_both(n, s, u, v)) * w;
      }
    }
    acc[u] += static_cast<double>(lazy_members(n, s, u, dir)) * w;
  }
  std::vector<double> law(n + 1, 0.0);
  for (Coord v = 1; v <= n; ++v) law[v] = acc[v].value();
  return law;
}

std::vector<double> partner_law(std::uint32_t n, Coord u) {
  if (u < 1 || u > n) throw DomainError("coordinate outside [1,n]");
  const std::uint32_t levels = levels_of(n);
  if (levels == 0) throw DomainError("sub-hypercubes need n >= 2");
  std::vector<KahanSum> acc(n + 1);
  for (std::uint32_t q = 1; q <= levels; ++q) {
    const std::uint64_t s = std::uint64_t{1} << q;
    const double w = 1.0 / (static_cast<double>(levels) * static_cast<double>(s) *
                            static_cast<double>(s - 1));
    for (std::uint64_t o = 0; o < s; ++o) {
      for (std::uint64_t p = 0; p < s; ++p) {
        if (p == o) continue;
        const auto offset = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(o);
        acc[wrap_coord(static_cast<std::int64_t>(u) + offset, n)] += w;
      }
    }
  }
  std::vector<double> law(n + 1, 0.0);
  for (Coord v = 1; v <= n; ++v) law[v] = acc[v].value();
  return law;
}

std::vector<double> cube_pair_law(std::uint32_t n) {
  const std::uint32_t levels = levels_of(n);
  if (levels == 0) throw DomainError("sub-hypercubes need n >= 2");
  std::vector<KahanSum> acc((n + 1) * (n + 1));
  for (std::uint32_t q = 1; q <= levels; ++q) {
    const std::uint64_t s = std::uint64_t{1} << q;
    const double w = 1.0 / (static_cast<double>(levels) * static_cast<double>(n) *
                            static_cast<double>(s * (s - 1) / 2));
    for (std::uint32_t start = 1; start <= n; ++start) {
      for (std::uint64_t p = 0; p < s; ++p) {
        for (std::uint64_t r = p + 1; r < s; ++r) {
          const Coord a = wrap_coord(start + static_cast<std::int64_t>(p), n);
          const Coord b = wrap_coord(start + static_cast<std::int64_t>(r), n);
          acc[std::min(a, b) * (n + 1) + std::max(a, b)] += w;
        }
      }
    }
  }
  std::vector<double> law(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) law[i] = acc[i].value();
  return law;
}

WalkPmf::WalkPmf(GridShape shape, Point anchor, WalkSpec spec, std::vector<double> table)
    : shape_(shape), anchor_(std::move(anchor)), spec_(spec), table_(std::move(table)) {}

double WalkPmf::total_mass() const { return kahan_total(table_); }

double WalkPmf::max_abs_diff(const WalkPmf& other) const {
  if (table_.size() != other.table_.size()) {
    throw DomainError("pmfs live on different shapes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    worst = std::max(worst, std::abs(table_[i] - other.table_[i]));
  }
  return worst;
}

void WalkPmf::write_csv(std::ostream& out) const {
  out << "point_index,probability\n";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != 0.0) out << i << ',' << format_double(table_[i]) << '\n';
  }
}

WalkPmf exact_pmf(const GridShape& shape, std::span<const Coord> x, const WalkSpec& spec,
                  Formulation form, std::uint64_t budget) {
  if (!Point(std::vector<Coord>(x.begin(), x.end())).valid_for(shape)) {
    throw DomainError("anchor is not a point of the grid");
  }
  shape.log2n();
  const std::uint32_t m = selected_count(spec.tau, shape.d());
  check_budget(row_terms(shape, m), budget, "exact walk pmf");
  const auto kernels = build_kernels(shape.n(), spec.direction, form);
  std::vector<double> table(shape.size());
  fill_row(shape, x, kernels, m, table);
  if (form == Formulation::cube_first) {
    // Condition on the start vertex.
    double start = 1.0;
    for (Coord u : x) start *= kernels[u].unselected[u];
    for (double& p : table) p /= start;
  }
  return WalkPmf(shape, Point(std::vector<Coord>(x.begin(), x.end())), spec,
                 std::move(table));
}

std::vector<double> exact_joint_pmf(const GridShape& shape, const WalkSpec& spec,
                                    Formulation form, std::uint64_t budget) {
  shape.log2n();
  const std::uint32_t m = selected_count(spec.tau, shape.d());
  const std::uint64_t per_row = row_terms(shape, m);
  const std::uint64_t size = shape.size();
  if (per_row == UINT64_MAX || per_row > budget / size) {
    check_budget(UINT64_MAX, budget, "exact joint pmf");
  }
  const auto kernels = build_kernels(shape.n(), spec.direction, form);
  std::vector<double> joint(size * size);
  std::vector<Coord> x(shape.d());
  const double start = 1.0 / static_cast<double>(size);
  for (PointIndex xi = 0; xi < size; ++xi) {
    point_of(shape, xi, x);
    std::span<double> row(joint.data() + xi * size, size);
    fill_row(shape, x, kernels, m, row);
    if (form != Formulation::cube_first) {
      for (double& p : row) p *= start;
    }
  }
  return joint;
}

std::vector<double> cube_first_start_marginal(const GridShape& shape) {
  const auto kernels = build_kernels(shape.n(), Direction::up, Formulation::cube_first);
  std::vector<double> marginal(shape.size());
  std::vector<Coord> x(shape.d());
  for (PointIndex i = 0; i < marginal.size(); ++i) {
    point_of(shape, i, x);
    double p = 1.0;
    for (Coord u : x) p *= kernels[u].unselected[u];
    marginal[i] = p;
  }
  return marginal;
}

}  // namespace hgmono
