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

#include "hgmono/distance.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "hgmono/errors.hpp"
#include "hgmono/violation.hpp"

namespace hgmono {
namespace {

// Stride of dimension i in the mixed-radix index.
std::vector<PointIndex> strides(const GridShape& shape) {
  std::vector<PointIndex> s(shape.d());
  PointIndex v = 1;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    s[i] = v;
    v *= shape.n();
  }
  return s;
}

// Dinic max flow with integer capacities.
class FlowNetwork {
 public:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max() / 4;

  explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<std::int64_t>(arcs_.size() - 1);
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<std::int64_t>(arcs_.size() - 1);
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (levels(s, t)) {
      cursor_ = head_;
      while (const std::int64_t pushed = push(s, t, kInfinite)) total += pushed;
    }
    return total;
  }

  // Nodes reachable from s in the residual graph.
  std::vector<char> reachable(std::size_t s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::int64_t a = head_[u]; a >= 0; a = arcs_[a].next) {
        const Arc& arc = arcs_[a];
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = 1;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t next;
    std::int64_t cap;
  };

  bool levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::int64_t a = head_[u]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t push(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    for (std::int64_t& a = cursor_[u]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      const std::int64_t got = push(arc.to, t, std::min(limit, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::int64_t> head_;
  std::vector<std::int64_t> level_;
  std::vector<std::int64_t> cursor_;
};

DistanceResult by_flow(const ExplicitFunction& table) {
  const GridShape& shape = table.shape();
  const std::uint64_t size = shape.size();
  const auto stride = strides(shape);
  const std::size_t source = size;
  const std::size_t sink = size + 1;
  FlowNetwork net(size + 2);
  std::vector<Coord> x(shape.d());
  // Arcs added in reverse so adjacency lists scan in increasing index order.
  for (PointIndex i = size; i-- > 0;) {
    point_of(shape, i, x);
    for (std::uint32_t k = shape.d(); k-- > 0;) {
      if (x[k] < shape.n()) net.add_arc(i, i + stride[k], FlowNetwork::kInfinite);
    }
  }
  for (PointIndex i = size; i-- > 0;) {
    if (table.get(i)) {
      net.add_arc(source, i, 1);
    } else {
      net.add_arc(i, sink, 1);
    }
  }
  DistanceResult result;
  result.method = DistanceMethod::covering_flow;
  result.changes = static_cast<std::uint64_t>(net.max_flow(source, sink));
  // The residual source side is an up-set; it is the nearest monotone
  // function, and it disagrees with f exactly on the cut.
  const std::vector<char> up = net.reachable(source);
  for (PointIndex i = 0; i < size; ++i) {
    if (static_cast<bool>(up[i]) != table.get(i)) result.repair_set.push_back(i);
  }
  return result;
}

DistanceResult by_matching(const FunctionOracle& f, const ExplicitFunction& table,
                           std::uint64_t budget) {
  const GridShape& shape = table.shape();
  const ViolationGraph g = build_violation_graph(f, ViolationMode::full_comparable, budget);
  const auto matching = maximum_matching(g);
  DistanceResult result;
  result.method = DistanceMethod::matching;
  result.changes = matching.size();

  // Minimum vertex cover from the matching: Z = vertices reachable from
  // unmatched left vertices by alternating paths; cover = (L \ Z) + (R n Z).
  const auto left = g.left();
  const auto right = g.right();
  const auto pos = [](std::span<const PointIndex> side, PointIndex v) {
    return static_cast<std::size_t>(std::lower_bound(side.begin(), side.end(), v) - side.begin());
  };
  std::vector<std::vector<std::size_t>> adj(left.size());
  for (const ViolationEdge& e : g.edges()) adj[pos(left, e.low)].push_back(pos(right, e.high));
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> mate_l(left.size(), kNone);
  std::vector<std::size_t> mate_r(right.size(), kNone);
  for (const auto& [lo, hi] : matching) {
    mate_l[pos(left, lo)] = pos(right, hi);
    mate_r[pos(right, hi)] = pos(left, lo);
  }
  std::vector<char> zl(left.size(), 0);
  std::vector<char> zr(right.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < left.size(); ++u) {
    if (mate_l[u] == kNone) {
      zl[u] = 1;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t r : adj[u]) {
      if (zr[r]) continue;
      zr[r] = 1;
      const std::size_t w = mate_r[r];
      if (w != kNone && !zl[w]) {
        zl[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<char> cover(shape.size(), 0);
  for (std::size_t u = 0; u < left.size(); ++u) {
    if (!zl[u]) cover[left[u]] = 1;
  }
  for (std::size_t r = 0; r < right.size(); ++r) {
    if (zr[r]) cover[right[r]] = 1;
  }
  // The uncovered points carry no violation; extend them to the up-closure
  // of their 1-points. Index order is a linear extension of the grid order.
  const auto stride = strides(shape);
  std::vector<char> g_val(shape.size(), 0);
  std::vector<Coord> x(shape.d());
  for (PointIndex i = 0; i < shape.size(); ++i) {
    bool v = !cover[i] && table.get(i);
    point_of(shape, i, x);
    for (std::uint32_t k = 0; k < shape.d() && !v; ++k) {
      if (x[k] > 1 && g_val[i - stride[k]]) v = true;
    }
    g_val[i] = v;
    if (v != table.get(i)) result.repair_set.push_back(i);
  }
  return result;
}

}  // namespace

const char* to_string(DistanceMethod m) {
  return m == DistanceMethod::covering_flow ? "covering_flow" : "matching";
}

DistanceResult distance_to_monotonicity(const FunctionOracle& f, DistanceMethod method,
                                        std::uint64_t budget) {
  const GridShape& shape = f.shape();
  const auto size = shape.try_size();
  if (!size) throw ResourceError("distance: grid too large");
  if (method == DistanceMethod::covering_flow &&
      static_cast<double>(*size) * (shape.d() + 2) > static_cast<double>(budget)) {
    throw ResourceError("distance: " + shape.to_string() + " exceeds budget");
  }
  const ExplicitFunction table = ExplicitFunction::tabulate(f);
  DistanceResult result = method == DistanceMethod::covering_flow
                              ? by_flow(table)
                              : by_matching(table.as_oracle(f.name()), table, budget);
  result.distance = Rational(result.changes) / Rational(*size);
  return result;
}

Rational distance_bruteforce(const FunctionOracle& f) {
  const GridShape& shape = f.shape();
  const auto size = shape.try_size();
  if (!size || *size > kBruteforceMaxPoints) {
    throw ResourceError("bruteforce distance needs at most 12 points");
  }
  const std::uint32_t points = static_cast<std::uint32_t>(*size);
  std::vector<Point> all(points);
  std::uint32_t fmask = 0;
  for (std::uint32_t i = 0; i < points; ++i) {
    all[i] = point_of(shape, i);
    if (f.eval(all[i])) fmask |= 1U << i;
  }
  // above[i]: points y with all[i] <= y.
  std::vector<std::uint32_t> above(points, 0);
  for (std::uint32_t i = 0; i < points; ++i) {
    for (std::uint32_t j = 0; j < points; ++j) {
      if (precedes(all[i], all[j])) above[i] |= 1U << j;
    }
  }
  int best = static_cast<int>(points);
  for (std::uint32_t g = 0; g < (1U << points); ++g) {
    bool up_set = true;
    for (std::uint32_t i = 0; i < points && up_set; ++i) {
      if ((g >> i & 1U) && (above[i] & ~g) != 0) up_set = false;
    }
    if (up_set) best = std::min(best, __builtin_popcount(g ^ fmask));
  }
  return Rational(best) / Rational(points);
}

ExplicitFunction apply_repair(const ExplicitFunction& f, const std::vector<PointIndex>& repair) {
  ExplicitFunction g = f;
  for (PointIndex i : repair) g.set(i, !g.get(i));
  return g;
}

bool is_monotone(const ExplicitFunction& f) {
  const GridShape& shape = f.shape();
  const auto stride = strides(shape);
  std::vector<Coord> x(shape.d());
  for (PointIndex i = 0; i < f.size(); ++i) {
    if (!f.get(i)) continue;
    point_of(shape, i, x);
    for (std::uint32_t k = 0; k < shape.d(); ++k) {
      if (x[k] < shape.n() && !f.get(i + stride[k])) return false;
    }
  }
  return true;
}

}  // namespace hgmono
