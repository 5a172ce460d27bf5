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

#include "hgmono/talagrand.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hgmono/errors.hpp"

namespace hgmono {
namespace {

// Incremental objective: per (vertex, dimension) the number of incident
// edges whose color matches the vertex side (1 for left, 0 for right).
class ColoredState {
 public:
  ColoredState(const ViolationGraph& g, const Coloring& chi)
      : d_(g.shape().d()), edges_(g.edges().begin(), g.edges().end()) {
    const auto left = g.left();
    const auto right = g.right();
    const std::size_t nl = left.size();
    counts_.assign((nl + right.size()) * d_, 0);
    phi_.assign(nl + right.size(), 0);
    histogram_.assign(d_ + 1, 0);
    histogram_[0] = nl + right.size();
    ends_.reserve(edges_.size());
    for (const ViolationEdge& e : edges_) {
      if (e.dimension < 0) throw DomainError("Talagrand objective needs axis edges");
      const auto l = static_cast<std::size_t>(
          std::lower_bound(left.begin(), left.end(), e.low) - left.begin());
      const auto r = static_cast<std::size_t>(
          std::lower_bound(right.begin(), right.end(), e.high) - right.begin());
      ends_.push_back({l, nl + r});
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      if (chi[k]) {
        bump(ends_[k].first, k, +1);
      } else {
        bump(ends_[k].second, k, +1);
      }
    }
    colors_ = chi;
  }

  void flip(std::size_t k) {
    if (colors_[k]) {
      bump(ends_[k].first, k, -1);
      bump(ends_[k].second, k, +1);
    } else {
      bump(ends_[k].second, k, -1);
      bump(ends_[k].first, k, +1);
    }
    colors_[k] ^= 1U;
  }

  // Evaluated from the histogram of Phi values, so the result does not
  // depend on the flip history.
  double objective() const {
    double s = 0.0;
    for (std::uint32_t k = 1; k <= d_; ++k) {
      if (histogram_[k] == 0) continue;
      s += static_cast<double>(histogram_[k]) * std::sqrt(static_cast<double>(k));
    }
    return s;
  }

  const Coloring& colors() const { return colors_; }

 private:
  void bump(std::size_t v, std::size_t k, int delta) {
    std::uint32_t& c = counts_[v * d_ + static_cast<std::size_t>(edges_[k].dimension)];
    if (delta > 0) {
      if (c++ == 0) move(v, +1);
    } else if (--c == 0) {
      move(v, -1);
    }
  }

  void move(std::size_t v, int delta) {
    --histogram_[phi_[v]];
    phi_[v] = static_cast<std::uint32_t>(static_cast<int>(phi_[v]) + delta);
    ++histogram_[phi_[v]];
  }

  std::uint32_t d_;
  std::vector<ViolationEdge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint64_t> histogram_;
  Coloring colors_;
};

}  // namespace

ThresholdedInfluence thresholded_influence(const ViolationGraph& g,
                                           const std::optional<Coloring>& chi) {
  const std::uint32_t d = g.shape().d();
  const auto left = g.left();
  const auto right = g.right();
  if (chi && chi->size() != g.edge_count()) {
    throw DomainError("coloring size differs from the edge count");
  }
  ThresholdedInfluence out;
  std::vector<std::vector<char>> seen_l(left.size(), std::vector<char>(d, 0));
  std::vector<std::vector<char>> seen_r(right.size(), std::vector<char>(d, 0));
  out.left.assign(left.size(), 0);
  out.right.assign(right.size(), 0);
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const ViolationEdge& e = edges[k];
    if (e.dimension < 0) throw DomainError("thresholded influence needs axis edges");
    const auto dim = static_cast<std::size_t>(e.dimension);
    const bool count_low = !chi || (*chi)[k] == 1;
    const bool count_high = !chi || (*chi)[k] == 0;
    if (count_low) {
      const auto l = static_cast<std::size_t>(
          std::lower_bound(left.begin(), left.end(), e.low) - left.begin());
      if (!seen_l[l][dim]) {
        seen_l[l][dim] = 1;
        ++out.left[l];
      }
    }
    if (count_high) {
      const auto r = static_cast<std::size_t>(
          std::lower_bound(right.begin(), right.end(), e.high) - right.begin());
      if (!seen_r[r][dim]) {
        seen_r[r][dim] = 1;
        ++out.right[r];
      }
    }
  }
  for (std::uint32_t p : out.left) {
    out.total += p;
    out.sqrt_total += std::sqrt(static_cast<double>(p));
  }
  for (std::uint32_t p : out.right) {
    out.total += p;
    out.sqrt_total += std::sqrt(static_cast<double>(p));
  }
  return out;
}

TalagrandResult talagrand_objective(const ViolationGraph& g, bool require_exact) {
  const std::size_t m = g.edge_count();
  TalagrandResult result;
  result.all_one = thresholded_influence(g, Coloring(m, 1)).sqrt_total;
  result.all_zero = thresholded_influence(g, Coloring(m, 0)).sqrt_total;
  if (m == 0) {
    result.exact = true;
    return result;
  }

  // Local search: accept single flips that lower the objective.
  {
    ColoredState state(g, Coloring(m, result.all_one <= result.all_zero ? 1 : 0));
    double current = state.objective();
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 0; k < m; ++k) {
        state.flip(k);
        const double v = state.objective();
        if (v < current - 1e-12) {
          current = v;
          improved = true;
        } else {
          state.flip(k);
        }
      }
    }
    result.local_search = current;
    result.value = current;
    result.argmin = state.colors();
  }

  if (m > kTalagrandExactMaxEdges) {
    if (require_exact) throw ResourceError("exact Talagrand objective needs m <= 22 edges");
    return result;
  }
  // Gray code: step t flips edge countr_zero(t).
  ColoredState state(g, Coloring(m, 0));
  double best = state.objective();
  std::uint64_t best_code = 0;
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) {
    state.flip(static_cast<std::size_t>(std::countr_zero(t)));
    const double v = state.objective();
    if (v < best - 1e-12) {
      best = v;
      best_code = t ^ (t >> 1);
    }
  }
  result.exact = true;
  result.value = best;
  result.argmin.assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) result.argmin[k] = (best_code >> k) & 1U;
  return result;
}

}  // namespace hgmono
