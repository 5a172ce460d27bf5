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

#include "hgmono/tester.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hgmono/errors.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/parallel.hpp"
#include "hgmono/walks.hpp"

namespace hgmono {
namespace {

constexpr std::uint64_t kTrialTag = 0;
constexpr std::uint64_t kSubgridTag = 0x5ab9;
constexpr std::uint64_t kInnerSeedTag = 0x1a3e;

constexpr TestStep kSteps[] = {TestStep::up_path, TestStep::down_path,
                               TestStep::up_path_down_shift, TestStep::down_path_up_shift};

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
}

struct Workspace {
  explicit Workspace(std::uint32_t d) : x(d), y(d), low(d), high(d), aux(d) {}
  std::vector<Coord> x, y, low, high, aux;
  WalkScratch scratch;
};

void fill_uniform(const GridShape& shape, Rng& rng, std::span<Coord> out) {
  for (Coord& c : out) c = static_cast<Coord>(rng.below(shape.n()) + 1);
}

// Writes the pair tested by `step` into ws.low / ws.high. Returns false when a
// shifted pair leaves the grid.
bool draw_pair(const GridShape& shape, TestStep step, std::uint32_t ell, std::uint32_t tau,
               Rng& rng, Workspace& ws) {
  const std::uint32_t d = shape.d();
  switch (step) {
    case TestStep::up_path:
      fill_uniform(shape, rng, ws.low);
      walk_into(shape, ws.low, ell, Direction::up, rng, ws.high, ws.scratch);
      return true;
    case TestStep::down_path:
      fill_uniform(shape, rng, ws.high);
      walk_into(shape, ws.high, ell, Direction::down, rng, ws.low, ws.scratch);
      return true;
    case TestStep::up_path_down_shift:
      fill_uniform(shape, rng, ws.x);
      walk_into(shape, ws.x, ell, Direction::up, rng, ws.y, ws.scratch);
      // aux = x - s with s drawn from the down-shift law at x.
      walk_into(shape, ws.x, tau - 1, Direction::down, rng, ws.aux, ws.scratch);
      for (std::uint32_t i = 0; i < d; ++i) {
        const Coord s = ws.x[i] - ws.aux[i];
        if (ws.y[i] <= s) return false;
        ws.low[i] = ws.aux[i];
        ws.high[i] = ws.y[i] - s;
      }
      return true;
    case TestStep::down_path_up_shift:
      fill_uniform(shape, rng, ws.y);
      walk_into(shape, ws.y, ell, Direction::down, rng, ws.x, ws.scratch);
      // aux = y + s with s drawn from the up-shift law at y.
      walk_into(shape, ws.y, tau - 1, Direction::up, rng, ws.aux, ws.scratch);
      for (std::uint32_t i = 0; i < d; ++i) {
        const Coord s = ws.aux[i] - ws.y[i];
        if (ws.x[i] + s > shape.n()) return false;
        ws.low[i] = ws.x[i] + s;
        ws.high[i] = ws.aux[i];
      }
      return true;
  }
  return false;
}

template <typename Eval>
TrialOutcome trial_kernel(Eval& eval, const GridShape& shape,
                          const std::vector<std::uint32_t>& schedule, Rng& rng,
                          Workspace& ws) {
  TrialOutcome out;
  out.tau = schedule[rng.below(schedule.size())];
  for (TestStep step : kSteps) {
    for (LengthSlot slot : {LengthSlot::tau_minus_one, LengthSlot::tau}) {
      const std::uint32_t ell = slot == LengthSlot::tau ? out.tau : out.tau - 1;
      if (!draw_pair(shape, step, ell, out.tau, rng, ws)) continue;
      const bool at_low = eval(std::span<const Coord>(ws.low));
      const bool at_high = eval(std::span<const Coord>(ws.high));
      out.queries += 2;
      if (at_low && !at_high) {
        out.rejected = true;
        out.step = step;
        out.length = slot;
        out.witness = Witness{Point(ws.low), Point(ws.high)};
        return out;
      }
    }
  }
  return out;
}

struct Partial {
  explicit Partial(const std::vector<std::uint32_t>& schedule) {
    for (std::uint32_t tau : schedule) per_tau.push_back(TauStats{tau, 0, 0, 0});
  }

  void add(const TrialOutcome& o, std::size_t tau_slot, std::uint64_t trial) {
    ++trials;
    TauStats& t = per_tau[tau_slot];
    ++t.trials;
    t.queries += o.queries;
    queries += o.queries;
    max_queries = std::max(max_queries, o.queries);
    if (!o.rejected) return;
    ++rejections;
    ++t.rejections;
    ++per_step[static_cast<std::size_t>(*o.step)];
    ++per_length[static_cast<std::size_t>(*o.length)];
    if (!witness_trial || trial < *witness_trial) {
      witness_trial = trial;
      witness = o.witness;
    }
  }

  void merge(const Partial& other) {
    trials += other.trials;
    rejections += other.rejections;
    queries += other.queries;
    max_queries = std::max(max_queries, other.max_queries);
    for (std::size_t i = 0; i < per_tau.size(); ++i) {
      per_tau[i].trials += other.per_tau[i].trials;
      per_tau[i].rejections += other.per_tau[i].rejections;
      per_tau[i].queries += other.per_tau[i].queries;
    }
    for (std::size_t i = 0; i < 4; ++i) per_step[i] += other.per_step[i];
    for (std::size_t i = 0; i < 2; ++i) per_length[i] += other.per_length[i];
    if (other.witness_trial && (!witness_trial || *other.witness_trial < *witness_trial)) {
      witness_trial = other.witness_trial;
      witness = other.witness;
    }
  }

  TesterReport report() const {
    TesterReport r;
    r.trials = trials;
    r.rejections = rejections;
    r.reject_rate = trials == 0 ? 0.0 : static_cast<double>(rejections) / trials;
    r.wilson_95 = wilson_interval(rejections, trials, kZ95);
    r.per_tau = per_tau;
    r.per_step = per_step;
    r.per_length = per_length;
    r.total_queries = queries;
    r.max_trial_queries = max_queries;
    r.first_witness = witness;
    r.first_witness_trial = witness_trial;
    return r;
  }

  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  std::uint64_t queries = 0;
  std::uint32_t max_queries = 0;
  std::vector<TauStats> per_tau;
  std::array<std::uint64_t, 4> per_step{};
  std::array<std::uint64_t, 2> per_length{};
  std::optional<Witness> witness;
  std::optional<std::uint64_t> witness_trial;
};

std::size_t slot_of(const std::vector<std::uint32_t>& schedule, std::uint32_t tau) {
  return static_cast<std::size_t>(std::find(schedule.begin(), schedule.end(), tau) -
                                  schedule.begin());
}

std::uint64_t resolve_trials(const TesterConfig& cfg, const GridShape& shape) {
  return cfg.trials != 0 ? cfg.trials : default_trials(cfg.epsilon, shape.d());
}

// Dense transition matrix: entry x * N + y = Pr[walk from x ends at y].
std::vector<double> transition(const GridShape& shape, Direction dir, std::uint32_t len) {
  const std::uint64_t size = shape.size();
  std::vector<double> out(size * size);
  for (PointIndex x = 0; x < size; ++x) {
    const WalkPmf pmf = exact_pmf(shape, point_of(shape, x), {dir, len}, Formulation::direct);
    std::copy(pmf.table().begin(), pmf.table().end(), out.begin() + x * size);
  }
  return out;
}

}  // namespace

const char* to_string(TestStep s) {
  switch (s) {
    case TestStep::up_path: return "up_path";
    case TestStep::down_path: return "down_path";
    case TestStep::up_path_down_shift: return "up_path_down_shift";
    case TestStep::down_path_up_shift: return "down_path_up_shift";
  }
  return "?";
}

const char* to_string(LengthSlot s) {
  return s == LengthSlot::tau ? "tau" : "tau_minus_one";
}

bool operator==(const TesterReport& a, const TesterReport& b) {
  return a.trials == b.trials && a.rejections == b.rejections &&
         a.reject_rate == b.reject_rate && a.wilson_95.low == b.wilson_95.low &&
         a.wilson_95.high == b.wilson_95.high && a.per_tau == b.per_tau &&
         a.per_step == b.per_step && a.per_length == b.per_length &&
         a.total_queries == b.total_queries && a.max_trial_queries == b.max_trial_queries &&
         a.first_witness == b.first_witness && a.first_witness_trial == b.first_witness_trial;
}

std::vector<std::uint32_t> default_tau_schedule(std::uint32_t d) {
  std::vector<std::uint32_t> schedule;
  const std::uint32_t top = std::bit_width(std::max(d, 1U) - 1);  // ceil(log2 d)
  for (std::uint32_t p = 0; p <= top; ++p) schedule.push_back(1U << p);
  return schedule;
}

std::uint64_t default_trials(double epsilon, std::uint32_t d) {
  check_epsilon(epsilon);
  return static_cast<std::uint64_t>(std::ceil(32.0 / (epsilon * epsilon) * std::sqrt(d)));
}

std::vector<std::uint32_t> resolve_schedule(const TesterConfig& cfg, const GridShape& shape) {
  if (cfg.tau_schedule.empty()) return default_tau_schedule(shape.d());
  for (std::uint32_t tau : cfg.tau_schedule) {
    if (!std::has_single_bit(tau)) {
      throw ConfigError("tau schedule entry " + std::to_string(tau) +
                        " is not a power of two");
    }
  }
  return cfg.tau_schedule;
}

TrialOutcome run_single_trial(const FunctionOracle& f, const TesterConfig& cfg, Rng& rng) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const auto schedule = resolve_schedule(cfg, shape);
  Workspace ws(shape.d());
  Querier q(f);
  return trial_kernel(q, shape, schedule, rng, ws);
}

TesterReport run_tester_serial(const FunctionOracle& f, const TesterConfig& cfg) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const auto schedule = resolve_schedule(cfg, shape);
  const std::uint64_t trials = resolve_trials(cfg, shape);
  Partial total(schedule);
  Workspace ws(shape.d());
  Querier q(f);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, t, kTrialTag);
    const TrialOutcome o = trial_kernel(q, shape, schedule, rng, ws);
    total.add(o, slot_of(schedule, o.tau), t);
  }
  return total.report();
}

TesterReport run_tester(const FunctionOracle& f, const TesterConfig& cfg) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const auto schedule = resolve_schedule(cfg, shape);
  const auto trials = static_cast<std::int64_t>(resolve_trials(cfg, shape));
  Partial total(schedule);
#pragma omp parallel num_threads(worker_count())
  {
    Partial local(schedule);
    Workspace ws(shape.d());
    Querier q(f);
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t t = 0; t < trials; ++t) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t), kTrialTag);
      const TrialOutcome o = trial_kernel(q, shape, schedule, rng, ws);
      local.add(o, slot_of(schedule, o.tau), static_cast<std::uint64_t>(t));
    }
#pragma omp critical(hgmono_tester_merge)
    total.merge(local);
  }
  return total.report();
}

double exact_reject_prob(const FunctionOracle& f, const TesterConfig& cfg,
                         std::uint64_t budget) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const auto schedule = resolve_schedule(cfg, shape);
  const std::uint64_t size = shape.size();
  const double cubed = static_cast<double>(size) * size * size;
  if (cubed * schedule.size() * 8.0 > static_cast<double>(budget)) {
    throw ResourceError("exact rejection probability over budget for " +
                        shape.to_string());
  }
  const std::uint32_t d = shape.d();
  std::vector<Point> points(size);
  std::vector<char> one(size);
  for (PointIndex i = 0; i < size; ++i) {
    points[i] = point_of(shape, i);
    one[i] = f.eval(points[i]);
  }
  const double start = 1.0 / static_cast<double>(size);

  // Index of a + (b - c) when it lies in the grid.
  std::vector<Coord> buf(d);
  const auto offset_index = [&](PointIndex a, PointIndex b,
                                PointIndex c) -> std::optional<PointIndex> {
    for (std::uint32_t i = 0; i < d; ++i) {
      const std::int64_t v = std::int64_t{points[a][i]} + points[b][i] - points[c][i];
      if (v < 1 || v > shape.n()) return std::nullopt;
      buf[i] = static_cast<Coord>(v);
    }
    return index_of(shape, buf);
  };

  KahanSum total;
  for (std::uint32_t tau : schedule) {
    const auto up_shift = transition(shape, Direction::up, tau - 1);
    const auto down_shift = transition(shape, Direction::down, tau - 1);
    double accept = 1.0;
    for (std::uint32_t ell : {tau - 1, tau}) {
      const auto up = transition(shape, Direction::up, ell);
      const auto down = transition(shape, Direction::down, ell);
      KahanSum step2, step3, step4, step5;
      for (PointIndex a = 0; a < size; ++a) {
        for (PointIndex b = 0; b < size; ++b) {
          // Step 2: x = a, y = b. Step 3: y = a, x = b.
          const double pu = up[a * size + b];
          const double pd = down[a * size + b];
          if (pu > 0.0 && one[a] && !one[b]) step2 += start * pu;
          if (pd > 0.0 && one[b] && !one[a]) step3 += start * pd;
          // Step 4: x = a, y = b, x - s = c, tested pair (c, b - (a - c)).
          if (pu > 0.0) {
            for (PointIndex c = 0; c < size; ++c) {
              const double ps = down_shift[a * size + c];
              if (ps == 0.0 || !one[c]) continue;
              const auto high = offset_index(b, c, a);
              if (high && !one[*high]) step4 += start * pu * ps;
            }
          }
          // Step 5: y = a, x = b, y + s = c, tested pair (b + (c - a), c).
          if (pd > 0.0) {
            for (PointIndex c = 0; c < size; ++c) {
              const double ps = up_shift[a * size + c];
              if (ps == 0.0 || one[c]) continue;
              const auto low = offset_index(b, c, a);
              if (low && one[*low]) step5 += start * pd * ps;
            }
          }
        }
      }
      for (const KahanSum& p : {step2, step3, step4, step5}) accept *= 1.0 - p.value();
    }
    total += (1.0 - accept) / static_cast<double>(schedule.size());
  }
  return total.value();
}

double domain_reduction_k_formula(std::uint32_t d, double epsilon) {
  check_epsilon(epsilon);
  return std::pow(d / epsilon, 8.0);
}

std::uint32_t default_subgrid_side(const GridShape& shape, double epsilon) {
  const double formula = domain_reduction_k_formula(shape.d(), epsilon);
  if (formula >= shape.n()) return shape.n();
  const auto floor_k = static_cast<std::uint32_t>(formula);
  return std::max(2U, std::bit_floor(floor_k));
}

FullTesterResult line_tester_fallback(const FunctionOracle& f, double epsilon, Rng& rng,
                                      std::uint64_t pairs) {
  check_epsilon(epsilon);
  const GridShape& shape = f.shape();
  const std::uint32_t levels = shape.log2n();
  FullTesterResult result;
  result.fallback = true;
  result.pairs = pairs != 0 ? pairs
                            : std::max<std::uint64_t>(
                                  1, static_cast<std::uint64_t>(std::ceil(
                                         shape.d() / epsilon * levels)));
  Querier q(f);
  std::vector<Coord> x(shape.d());
  std::vector<Coord> y(shape.d());
  for (std::uint64_t p = 0; p < result.pairs; ++p) {
    const auto dim = static_cast<std::uint32_t>(rng.below(shape.d()));
    fill_uniform(shape, rng, x);
    y = x;
    const Coord c = sample_interval_target(shape, x[dim], rng);
    if (c > x[dim]) y[dim] = c;
    const bool at_low = q(std::span<const Coord>(x));
    const bool at_high = q(std::span<const Coord>(y));
    result.queries += 2;
    if (at_low && !at_high) {
      result.rejected = true;
      result.witness = Witness{Point(x), Point(y)};
      break;
    }
  }
  return result;
}

FullTesterResult run_full_tester(const FunctionOracle& f, double epsilon,
                                 const TesterConfig& cfg) {
  check_epsilon(epsilon);
  const GridShape& shape = f.shape();
  shape.log2n();
  if (epsilon < 1.0 / std::sqrt(static_cast<double>(shape.d()))) {
    Rng rng = Rng::stream(cfg.seed, 0, kSubgridTag);
    return line_tester_fallback(f, epsilon, rng);
  }
  const DomainReduction reduction = cfg.domain_reduction.value_or(DomainReduction{});
  FullTesterResult result;
  result.k_formula = domain_reduction_k_formula(shape.d(), epsilon);
  result.k_used = reduction.k != 0 ? reduction.k : default_subgrid_side(shape, epsilon);
  if (!std::has_single_bit(result.k_used)) {
    throw ConfigError("subgrid side k must be a power of two");
  }
  result.outer_reps = reduction.outer_reps != 0
                          ? reduction.outer_reps
                          : static_cast<std::uint32_t>(std::ceil(8.0 / epsilon));
  result.inner_trials = cfg.trials != 0 ? cfg.trials : default_trials(epsilon, shape.d());
  for (std::uint32_t rep = 0; rep < result.outer_reps; ++rep) {
    Rng rng = Rng::stream(cfg.seed, rep, kSubgridTag);
    const Subgrid axes = sample_subgrid(shape, result.k_used, rng);
    const FunctionOracle g = restrict_to_subgrid(f, axes);
    TesterConfig inner = cfg;
    inner.trials = result.inner_trials;
    inner.seed = Rng::stream(cfg.seed, rep, kInnerSeedTag)();
    inner.domain_reduction.reset();
    const TesterReport report = run_tester(g, inner);
    result.queries += report.total_queries;
    if (report.first_witness) {
      result.rejected = true;
      result.witness = Witness{lift_point(axes, report.first_witness->low),
                               lift_point(axes, report.first_witness->high)};
      break;
    }
  }
  return result;
}

}  // namespace hgmono
