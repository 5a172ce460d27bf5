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

#ifndef HGMONO_DISTANCE_HPP_
#define HGMONO_DISTANCE_HPP_

#include <cstdint>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/oracle.hpp"

namespace hgmono {

enum class DistanceMethod {
  // Max flow from the 1-points to the 0-points through the covering graph
  // of the grid; scales to about 10^6 points.
  covering_flow,
  // Maximum matching of the full_comparable violation graph.
  matching,
};

const char* to_string(DistanceMethod m);

struct DistanceResult {
  Rational distance{0};
  // Points that must change: matching size = minimum repair set size.
  std::uint64_t changes = 0;
  // Points whose flip makes f monotone, sorted by index.
  std::vector<PointIndex> repair_set;
  DistanceMethod method = DistanceMethod::covering_flow;

  double value() const { return static_cast<double>(distance); }
};

// Exact distance to the nearest monotone function. Throws ResourceError when
// the work for the chosen method exceeds the budget: n^d (d + 2) arcs for
// covering_flow, (n(n+1)/2)^d pairs for matching.
DistanceResult distance_to_monotonicity(const FunctionOracle& f,
                                        DistanceMethod method = DistanceMethod::covering_flow,
                                        std::uint64_t budget = 100'000'000);

// Minimum over all monotone g of the disagreement with f, by enumerating
// every up-set of the grid. Throws ResourceError above kBruteforceMaxPoints.
inline constexpr std::uint64_t kBruteforceMaxPoints = 12;
Rational distance_bruteforce(const FunctionOracle& f);

// Flips f on the given points.
ExplicitFunction apply_repair(const ExplicitFunction& f, const std::vector<PointIndex>& repair);

// f(x) <= f(x + e_i) for every covering pair.
bool is_monotone(const ExplicitFunction& f);

}  // namespace hgmono

#endif  // HGMONO_DISTANCE_HPP_
