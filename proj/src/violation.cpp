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

#include "hgmono/violation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

#include "hgmono/errors.hpp"
#include "hgmono/parallel.hpp"

namespace hgmono {
namespace {

std::vector<PointIndex> unique_sorted(std::vector<PointIndex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double pairs_to_examine(const GridShape& shape, ViolationMode mode) {
  const double n = shape.n();
  if (mode == ViolationMode::full_comparable) return comparable_pair_count(shape);
  return static_cast<double>(shape.size()) * shape.d() * (n - 1) / 2.0;
}

void check_budget(const GridShape& shape, ViolationMode mode, std::uint64_t budget) {
  if (!shape.try_size() || pairs_to_examine(shape, mode) > static_cast<double>(budget)) {
    throw ResourceError("violation graph of " + shape.to_string() + " exceeds budget");
  }
}

// Violations with lower endpoint x, sorted by upper endpoint.
void edges_from(const ExplicitFunction& table, ViolationMode mode, PointIndex xi,
                std::vector<Coord>& x, std::vector<Coord>& y,
                std::vector<ViolationEdge>& out) {
  const GridShape& shape = table.shape();
  const std::uint32_t n = shape.n();
  const std::uint32_t d = shape.d();
  if (!table.get(xi)) return;
  point_of(shape, xi, x);
  const std::size_t first = out.size();
  if (mode == ViolationMode::augmented_axis) {
    PointIndex stride = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
      for (Coord v = x[i] + 1; v <= n; ++v) {
        const PointIndex yi = xi + (v - x[i]) * stride;
        if (!table.get(yi)) out.push_back({xi, yi, static_cast<std::int32_t>(i)});
      }
      stride *= n;
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    return;
  }
  // Odometer over the box [x, (n, ..., n)], coordinate 1 fastest, which
  // visits upper endpoints in increasing index order.
  y = x;
  while (true) {
    const PointIndex yi = index_of(shape, y);
    if (yi != xi && !table.get(yi)) {
      std::int32_t dim = -1;
      std::uint32_t differing = 0;
      for (std::uint32_t i = 0; i < d; ++i) {
        if (y[i] != x[i]) {
          ++differing;
          dim = static_cast<std::int32_t>(i);
        }
      }
      out.push_back({xi, yi, differing == 1 ? dim : -1});
    }
    std::uint32_t i = 0;
    while (i < d && y[i] == n) {
      y[i] = x[i];
      ++i;
    }
    if (i == d) break;
    ++y[i];
  }
}

}  // namespace

const char* to_string(ViolationMode m) {
  return m == ViolationMode::full_comparable ? "full_comparable" : "augmented_axis";
}

ViolationGraph::ViolationGraph(GridShape shape, ViolationMode mode,
                               std::vector<ViolationEdge> edges)
    : shape_(std::move(shape)), mode_(mode), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  std::vector<PointIndex> lows;
  std::vector<PointIndex> highs;
  lows.reserve(edges_.size());
  highs.reserve(edges_.size());
  for (const ViolationEdge& e : edges_) {
    lows.push_back(e.low);
    highs.push_back(e.high);
  }
  left_ = unique_sorted(std::move(lows));
  right_ = unique_sorted(std::move(highs));
}

ViolationGraph ViolationGraph::subgraph(std::span<const std::size_t> edge_ids) const {
  std::vector<ViolationEdge> picked;
  picked.reserve(edge_ids.size());
  for (std::size_t id : edge_ids) {
    if (id >= edges_.size()) throw DomainError("edge id out of range");
    picked.push_back(edges_[id]);
  }
  return ViolationGraph(shape_, mode_, std::move(picked));
}

void ViolationGraph::write_csv(std::ostream& out) const {
  out << "x_index,y_index,dimension\n";
  for (const ViolationEdge& e : edges_) {
    out << e.low << ',' << e.high << ',' << e.dimension << '\n';
  }
}

double comparable_pair_count(const GridShape& shape) {
  const double n = shape.n();
  return std::pow(n * (n + 1) / 2.0, shape.d());
}

ViolationGraph build_violation_graph(const FunctionOracle& f, ViolationMode mode,
                                     std::uint64_t budget) {
  const GridShape& shape = f.shape();
  check_budget(shape, mode, budget);
  const ExplicitFunction table = ExplicitFunction::tabulate(f);
  const auto size = static_cast<std::int64_t>(shape.size());
  std::vector<std::vector<ViolationEdge>> per_point(static_cast<std::size_t>(size));
#pragma omp parallel num_threads(worker_count())
  {
    std::vector<Coord> x(shape.d());
    std::vector<Coord> y(shape.d());
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t xi = 0; xi < size; ++xi) {
      edges_from(table, mode, static_cast<PointIndex>(xi), x, y,
                 per_point[static_cast<std::size_t>(xi)]);
    }
  }
  std::size_t total = 0;
  for (const auto& v : per_point) total += v.size();
  std::vector<ViolationEdge> edges;
  edges.reserve(total);
  for (auto& v : per_point) {
    edges.insert(edges.end(), v.begin(), v.end());
    std::vector<ViolationEdge>().swap(v);
  }
  return ViolationGraph(shape, mode, std::move(edges));
}

ViolationGraph build_violation_graph_serial(const FunctionOracle& f, ViolationMode mode,
                                            std::uint64_t budget) {
  const GridShape& shape = f.shape();
  check_budget(shape, mode, budget);
  const ExplicitFunction table = ExplicitFunction::tabulate_serial(f);
  std::vector<Coord> x(shape.d());
  std::vector<Coord> y(shape.d());
  std::vector<ViolationEdge> edges;
  for (PointIndex xi = 0; xi < shape.size(); ++xi) edges_from(table, mode, xi, x, y, edges);
  return ViolationGraph(shape, mode, std::move(edges));
}

bool DegreeProfile::degree_bounds_hold() const {
  return x.max_degree <= x.max_dimension_degree * x.max_thresholded &&
         y.max_degree <= y.max_dimension_degree * y.max_thresholded;
}

DegreeProfile degree_profile(const ViolationGraph& g) {
  const std::uint32_t d = g.shape().d();
  DegreeProfile p;
  p.edges = g.edge_count();
  const auto init = [&](std::span<const PointIndex> side, std::vector<VertexDegrees>& out) {
    out.reserve(side.size());
    for (PointIndex v : side) {
      out.push_back({v, 0, std::vector<std::uint64_t>(d, 0), 0});
    }
  };
  init(g.left(), p.left);
  init(g.right(), p.right);
  const auto find = [](std::vector<VertexDegrees>& side, PointIndex v) -> VertexDegrees& {
    return *std::lower_bound(side.begin(), side.end(), v,
                             [](const VertexDegrees& a, PointIndex b) { return a.point < b; });
  };
  for (const ViolationEdge& e : g.edges()) {
    for (VertexDegrees* vd : {&find(p.left, e.low), &find(p.right, e.high)}) {
      ++vd->degree;
      if (e.dimension >= 0) ++vd->per_dimension[static_cast<std::size_t>(e.dimension)];
    }
  }
  const double size = g.shape().try_size() ? static_cast<double>(g.shape().size()) : 0.0;
  const auto aggregate = [&](std::vector<VertexDegrees>& side, SideAggregates& agg) {
    agg.max_per_dimension.assign(d, 0);
    agg.vertices = side.size();
    agg.density = size > 0 ? static_cast<double>(side.size()) / size : 0.0;
    for (VertexDegrees& vd : side) {
      vd.thresholded = static_cast<std::uint32_t>(
          std::count_if(vd.per_dimension.begin(), vd.per_dimension.end(),
                        [](std::uint64_t c) { return c > 0; }));
      agg.max_degree = std::max(agg.max_degree, vd.degree);
      agg.max_thresholded = std::max(agg.max_thresholded, vd.thresholded);
      for (std::uint32_t i = 0; i < d; ++i) {
        agg.max_per_dimension[i] = std::max(agg.max_per_dimension[i], vd.per_dimension[i]);
      }
    }
    for (std::uint64_t m : agg.max_per_dimension) {
      agg.max_dimension_degree = std::max(agg.max_dimension_degree, m);
    }
  };
  aggregate(p.left, p.x);
  aggregate(p.right, p.y);
  return p;
}

std::vector<std::pair<PointIndex, PointIndex>> maximum_matching(const ViolationGraph& g) {
  const auto left = g.left();
  const auto right = g.right();
  const std::size_t nl = left.size();
  const std::size_t nr = right.size();
  // CSR adjacency; edges are sorted by (low, high), so neighbours are in
  // increasing point order.
  std::vector<std::size_t> start(nl + 1, 0);
  std::vector<std::uint32_t> adj;
  adj.reserve(g.edge_count());
  {
    std::size_t li = 0;
    for (const ViolationEdge& e : g.edges()) {
      while (left[li] != e.low) start[++li] = adj.size();
      adj.push_back(static_cast<std::uint32_t>(
          std::lower_bound(right.begin(), right.end(), e.high) - right.begin()));
    }
    while (li < nl) start[++li] = adj.size();
  }

  constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> match_l(nl, kFree);
  std::vector<std::uint32_t> match_r(nr, kFree);
  std::vector<std::uint32_t> dist(nl);
  std::vector<std::size_t> cursor(nl);
  std::vector<std::uint32_t> stack;

  const auto bfs = [&] {
    std::queue<std::uint32_t> q;
    bool found = false;
    for (std::uint32_t u = 0; u < nl; ++u) {
      if (match_l[u] == kFree) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const std::uint32_t u = q.front();
      q.pop();
      for (std::size_t k = start[u]; k < start[u + 1]; ++k) {
        const std::uint32_t w = match_r[adj[k]];
        if (w == kFree) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // Iterative layered DFS from a free left vertex.
  const auto augment = [&](std::uint32_t root) {
    stack.assign(1, root);
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      bool advanced = false;
      for (; cursor[u] < start[u + 1]; ++cursor[u]) {
        const std::uint32_t r = adj[cursor[u]];
        const std::uint32_t w = match_r[r];
        if (w == kFree) {
          // Flip the path recorded on the stack.
          for (std::size_t s = stack.size(); s-- > 0;) {
            const std::uint32_t lu = stack[s];
            const std::uint32_t rr = adj[cursor[lu]];
            match_l[lu] = rr;
            match_r[rr] = lu;
          }
          return true;
        }
        if (dist[w] == dist[u] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++cursor[stack.back()];
      }
    }
    return false;
  };

  while (bfs()) {
    for (std::uint32_t u = 0; u < nl; ++u) cursor[u] = start[u];
    for (std::uint32_t u = 0; u < nl; ++u) {
      if (match_l[u] == kFree) augment(u);
    }
  }
  std::vector<std::pair<PointIndex, PointIndex>> out;
  for (std::uint32_t u = 0; u < nl; ++u) {
    if (match_l[u] != kFree) out.emplace_back(left[u], right[match_l[u]]);
  }
  return out;
}

}  // namespace hgmono
