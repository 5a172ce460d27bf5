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

#ifndef HGMONO_TESTER_HPP_
#define HGMONO_TESTER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hgmono/families.hpp"
#include "hgmono/grid.hpp"
#include "hgmono/oracle.hpp"
#include "hgmono/rng.hpp"
#include "hgmono/stats.hpp"
#include "hgmono/walk_pmf.hpp"

namespace hgmono {

enum class TestStep { up_path, down_path, up_path_down_shift, down_path_up_shift };
// Which walk length of the pair {tau - 1, tau}.
enum class LengthSlot { tau_minus_one, tau };

const char* to_string(TestStep s);
const char* to_string(LengthSlot s);

struct DomainReduction {
  // Subgrid side; 0 selects min(n, (d/eps)^8) rounded down to a power of two.
  std::uint32_t k = 0;
  // Subgrid draws; 0 selects ceil(8/eps).
  std::uint32_t outer_reps = 0;
};

struct TesterConfig {
  // 0 selects default_trials(epsilon, d).
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Walk lengths tau; empty selects default_tau_schedule(d).
  std::vector<std::uint32_t> tau_schedule;
  double epsilon = 0.5;
  std::optional<DomainReduction> domain_reduction;
};

// {2^0, 2^1, ..., 2^ceil(log2 d)}.
std::vector<std::uint32_t> default_tau_schedule(std::uint32_t d);
// ceil(32 eps^-2 sqrt(d)).
std::uint64_t default_trials(double epsilon, std::uint32_t d);

// A violated comparable pair: low <= high, f(low) = 1, f(high) = 0.
struct Witness {
  Point low;
  Point high;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct TrialOutcome {
  std::uint32_t tau = 0;
  bool rejected = false;
  std::optional<TestStep> step;
  std::optional<LengthSlot> length;
  std::optional<Witness> witness;
  std::uint32_t queries = 0;
};

struct TauStats {
  std::uint32_t tau = 0;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  std::uint64_t queries = 0;
  friend bool operator==(const TauStats&, const TauStats&) = default;
};

struct TesterReport {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double reject_rate = 0.0;
  Interval wilson_95;
  std::vector<TauStats> per_tau;
  std::array<std::uint64_t, 4> per_step{};
  std::array<std::uint64_t, 2> per_length{};
  std::uint64_t total_queries = 0;
  std::uint32_t max_trial_queries = 0;
  // Witness of the lowest-numbered rejecting trial.
  std::optional<Witness> first_witness;
  std::optional<std::uint64_t> first_witness_trial;

  friend bool operator==(const TesterReport& a, const TesterReport& b);
};

// Validates the schedule (powers of two) and fills defaults.
std::vector<std::uint32_t> resolve_schedule(const TesterConfig& cfg, const GridShape& shape);

// One run of the four sub-tests at lengths tau - 1 and tau, stopping at the
// first violated pair. Draws tau from the schedule.
TrialOutcome run_single_trial(const FunctionOracle& f, const TesterConfig& cfg, Rng& rng);

// Independent trials in parallel; trial t uses Rng::stream(seed, t, 0).
// Identical to run_tester_serial for every worker count.
TesterReport run_tester(const FunctionOracle& f, const TesterConfig& cfg);
TesterReport run_tester_serial(const FunctionOracle& f, const TesterConfig& cfg);

// Exact per-trial rejection probability of run_single_trial, from the exact
// walk pmfs. Throws ResourceError when (n^d)^3 * |schedule| * 8 exceeds budget.
double exact_reject_prob(const FunctionOracle& f, const TesterConfig& cfg,
                         std::uint64_t budget = kDefaultPmfBudget);

struct FullTesterResult {
  bool rejected = false;
  std::optional<Witness> witness;
  // The coordinate-line tester ran instead of the subgrid tester.
  bool fallback = false;
  double k_formula = 0.0;
  std::uint32_t k_used = 0;
  std::uint32_t outer_reps = 0;
  std::uint64_t inner_trials = 0;
  std::uint64_t pairs = 0;
  std::uint64_t queries = 0;
};

// For eps >= d^-1/2: repeated subgrid draws, each followed by a batch of
// trials on the restricted function; the witness is mapped back to f.
// Otherwise the coordinate-line tester.
FullTesterResult run_full_tester(const FunctionOracle& f, double epsilon,
                                 const TesterConfig& cfg);

// Pairs drawn on random axis-parallel lines with the one-coordinate walk.
// pairs = 0 selects ceil((d/eps) log2 n).
FullTesterResult line_tester_fallback(const FunctionOracle& f, double epsilon, Rng& rng,
                                      std::uint64_t pairs = 0);

// (d/eps)^8 and the side actually used for a shape.
double domain_reduction_k_formula(std::uint32_t d, double epsilon);
std::uint32_t default_subgrid_side(const GridShape& shape, double epsilon);

}  // namespace hgmono

#endif  // HGMONO_TESTER_HPP_
