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

#ifndef HGMONO_TALAGRAND_HPP_
#define HGMONO_TALAGRAND_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "hgmono/violation.hpp"

namespace hgmono {

// One color bit per edge of a violation graph, in edges() order.
using Coloring = std::vector<std::uint8_t>;

// Colored thresholded degree of every vertex: the number of dimensions i
// with an i-edge e at z and chi(e) = f(z). Without a coloring, every edge
// counts at both endpoints (the uncolored thresholded degree).
struct ThresholdedInfluence {
  // Indexed like graph.left() and graph.right().
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  std::uint64_t total = 0;
  // Sum over vertices of sqrt(Phi).
  double sqrt_total = 0.0;
};

// The graph must be axis-mode; throws DomainError on a coloring of the wrong
// length or an edge without a dimension.
ThresholdedInfluence thresholded_influence(const ViolationGraph& g,
                                           const std::optional<Coloring>& chi = std::nullopt);

inline constexpr std::size_t kTalagrandExactMaxEdges = 22;

struct TalagrandResult {
  // Exact minimum when `exact`, otherwise the best upper bound found.
  double value = 0.0;
  bool exact = false;
  Coloring argmin;
  // Objective at chi = 1 and chi = 0.
  double all_one = 0.0;
  double all_zero = 0.0;
  // Single-flip local search from the better constant coloring; an upper
  // bound only.
  double local_search = 0.0;
};

// min over edge 2-colorings of sum_z sqrt(Phi_chi(z)). Exact (Gray-code scan
// of all 2^m colorings) for m <= kTalagrandExactMaxEdges, otherwise the
// labeled upper bounds. With `require_exact`, larger graphs throw
// ResourceError.
TalagrandResult talagrand_objective(const ViolationGraph& g, bool require_exact = false);

}  // namespace hgmono

#endif  // HGMONO_TALAGRAND_HPP_
