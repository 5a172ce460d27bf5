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

#ifndef HGMONO_INFLUENCE_HPP_
#define HGMONO_INFLUENCE_HPP_

#include <cstdint>
#include <span>

#include "hgmono/grid.hpp"
#include "hgmono/oracle.hpp"
#include "hgmono/stats.hpp"
#include "hgmono/walk_pmf.hpp"
#include "hgmono/walks.hpp"

namespace hgmono {

// Three-valued answer of a Monte Carlo classifier whose interval may
// straddle the threshold. Exact evaluations never return undecided.
enum class Verdict { yes, no, undecided };
const char* to_string(Verdict v);

struct ProbabilityEstimate {
  double value = 0.0;
  // Degenerate [value, value] in exact mode.
  Interval ci{0.0, 0.0};
  bool exact = true;
  std::uint64_t samples = 0;
};

struct ClassifierOptions {
  // 0 selects exact evaluation through the walk pmfs.
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double z = kZ99;
  std::uint64_t budget = kDefaultPmfBudget;
};

Verdict decide_at_least(const ProbabilityEstimate& p, double threshold);
Verdict decide_at_most(const ProbabilityEstimate& p, double threshold);

struct InfluenceResult {
  // d * Pr[f(x) != f(y)] and d * Pr[f(x) > f(y)] with y one up-step from x.
  double total = 0.0;
  double negative = 0.0;
  bool exact = true;
  // Monte Carlo intervals, scaled by d.
  Interval total_ci{0.0, 0.0};
  Interval negative_ci{0.0, 0.0};
  std::uint64_t samples = 0;
  // Exact evaluation was over budget and Monte Carlo ran instead.
  bool fell_back = false;
};

// Exact from the one-coordinate step law; n^d * d * n evaluations.
InfluenceResult influence_tilde_exact(const FunctionOracle& f,
                                      std::uint64_t budget = kDefaultPmfBudget);
InfluenceResult influence_tilde_mc(const FunctionOracle& f, std::uint64_t samples,
                                   std::uint64_t seed, double z = kZ95);
// Exact when within budget, otherwise Monte Carlo with fell_back set.
InfluenceResult influence_tilde(const FunctionOracle& f,
                                std::uint64_t budget = kDefaultPmfBudget,
                                std::uint64_t mc_samples = 100'000, std::uint64_t seed = 0);

struct HypercubeInfluence {
  double total = 0.0;
  double negative = 0.0;
};

// E_H[I_H] over the unconditioned sub-hypercube law, enumerating every
// sub-hypercube with positive probability.
HypercubeInfluence hypercube_average_influence(const FunctionOracle& f,
                                               std::uint64_t budget = kDefaultPmfBudget);

// Pr_{y ~ walk from x}[f(y) != f(x)].
ProbabilityEstimate change_probability(const FunctionOracle& f, std::span<const Coord> x,
                                       std::uint32_t tau, Direction dir,
                                       const ClassifierOptions& opts = {});

// yes when the change probability is at most beta.
Verdict persistence_classify(const FunctionOracle& f, std::uint32_t tau, double beta,
                             std::span<const Coord> x, Direction dir,
                             const ClassifierOptions& opts = {});

struct PersistenceScan {
  std::uint64_t points = 0;
  // Points failing the bound in at least one direction.
  std::uint64_t non_persistent = 0;
  double fraction = 0.0;
  // fraction * beta * sqrt(d) / tau.
  double measured_constant = 0.0;
};

// Exact classification of every point in both directions.
PersistenceScan non_persistent_fraction(const FunctionOracle& f, std::uint32_t tau,
                                        double beta,
                                        std::uint64_t budget = kDefaultPmfBudget);

inline constexpr double kMzbThreshold = 0.9;
inline constexpr double kRedBlueThreshold = 0.01;

// Pr_{z' ~ D_ell(z)}[f(z') = 0].
ProbabilityEstimate mzb_probability(const FunctionOracle& f, std::uint32_t ell,
                                    std::span<const Coord> z,
                                    const ClassifierOptions& opts = {});
Verdict mzb_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> z,
                     const ClassifierOptions& opts = {});

// For a violated axis edge (x, y): Pr_{z in I(x,y)} Pr_{z' ~ U_ell(z)}[z' is
// ell-mzb]. Throws DomainError unless x < y differ in one coordinate with
// f(x) = 1 and f(y) = 0. In Monte Carlo mode the inner mzb test is exact
// when its pmf fits the budget and a point estimate otherwise.
ProbabilityEstimate red_probability(const FunctionOracle& f, std::uint32_t ell,
                                    std::span<const Coord> x, std::span<const Coord> y,
                                    const ClassifierOptions& opts = {});
Verdict red_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> x,
                     std::span<const Coord> y, const ClassifierOptions& opts = {});

// Pr_{z in I(x,y)} Pr_{z' ~ D_ell(z)}[f(z') = 1] for a violated axis edge.
ProbabilityEstimate blue_probability(const FunctionOracle& f, std::uint32_t ell,
                                     std::span<const Coord> x, std::span<const Coord> y,
                                     const ClassifierOptions& opts = {});
Verdict blue_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> x,
                      std::span<const Coord> y, const ClassifierOptions& opts = {});

// Pr_{H ~ H(x)}[x in the c-middle layers of H], exactly: the weight of x in
// H is a sum of independent coordinate indicators [c_i < x_i].
ProbabilityEstimate typicality_probability(const GridShape& shape, std::span<const Coord> x,
                                           double c, double eps);
ProbabilityEstimate typicality_estimate(const GridShape& shape, std::span<const Coord> x,
                                        double c, double eps, std::uint64_t samples,
                                        std::uint64_t seed, double z = kZ95);
// Probability at least 1 - (eps/d)^5.
bool is_typical(double probability, std::uint32_t d, double eps);
// Exact fraction of c-typical points of the grid.
double typical_fraction(const GridShape& shape, double c, double eps);
// 1 - (eps/d)^(c-5).
double typical_fraction_bound(std::uint32_t d, double c, double eps);

}  // namespace hgmono

#endif  // HGMONO_INFLUENCE_HPP_
