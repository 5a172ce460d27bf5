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

#ifndef HGMONO_EQUIVALENCE_HPP_
#define HGMONO_EQUIVALENCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hgmono/grid.hpp"
#include "hgmono/rng.hpp"
#include "hgmono/stats.hpp"
#include "hgmono/walk_pmf.hpp"
#include "hgmono/walks.hpp"

namespace hgmono {

inline constexpr double kEquivTolerance = 1e-12;
inline constexpr double kEquivAlpha = 0.001;

struct EquivalenceRow {
  // "direct:cube_first" for a pairwise comparison, "cube_first:exact" for a
  // fit against the exact law.
  std::string comparison;
  bool exact = true;
  double max_abs_diff = 0.0;
  ChiSquareResult chi;
  std::uint64_t samples = 0;
  bool pass = false;
};

// Pairwise comparison of the exact joint pmfs of the three formulations.
// Throws ResourceError over budget.
std::vector<EquivalenceRow> compare_exact(const GridShape& shape, const WalkSpec& spec,
                                          double tolerance = kEquivTolerance,
                                          std::uint64_t budget = kDefaultPmfBudget);

using PairSampler = std::function<std::pair<Point, Point>(Rng&)>;

PairSampler formulation_sampler(const GridShape& shape, const WalkSpec& spec,
                                Formulation form);

// Counts of pair index index_of(x) * n^d + index_of(y) over `samples` draws.
// Draw s uses Rng::stream(seed, s, tag). Throws ResourceError when n^(2d)
// exceeds the budget.
std::vector<std::uint64_t> pair_histogram(const GridShape& shape, const PairSampler& sampler,
                                          std::uint64_t samples, std::uint64_t seed,
                                          std::uint64_t tag,
                                          std::uint64_t budget = kDefaultPmfBudget);

// Chi-square fit of every formulation's samples against the exact direct
// joint law. When that law is over budget, cube_first and cube_at_x are each
// compared with direct samples by a homogeneity test instead.
std::vector<EquivalenceRow> compare_statistical(const GridShape& shape, const WalkSpec& spec,
                                                std::uint64_t samples, std::uint64_t seed,
                                                double alpha = kEquivAlpha,
                                                std::uint64_t budget = kDefaultPmfBudget);

// Fit of an arbitrary sampler against the exact direct law.
EquivalenceRow fit_sampler(const GridShape& shape, const WalkSpec& spec,
                           const PairSampler& sampler, const std::string& name,
                           std::uint64_t samples, std::uint64_t seed,
                           double alpha = kEquivAlpha,
                           std::uint64_t budget = kDefaultPmfBudget);

}  // namespace hgmono

#endif  // HGMONO_EQUIVALENCE_HPP_
