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

// Acceptance driver. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers to run a subset.

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hgmono/cli.hpp"
#include "hgmono/distance.hpp"
#include "hgmono/equivalence.hpp"
#include "hgmono/families.hpp"
#include "hgmono/influence.hpp"
#include "hgmono/layers.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/parallel.hpp"
#include "hgmono/stats.hpp"
#include "hgmono/talagrand.hpp"
#include "hgmono/tester.hpp"
#include "hgmono/violation.hpp"
#include "test_oracles.hpp"

namespace hgmono {
namespace {

namespace fs = std::filesystem;
using testing_oracles::brute_talagrand;
using testing_oracles::literal_cube_walk_counts;
using testing_oracles::literal_trial_reject_prob;
using testing_oracles::literal_walk_law;
using testing_oracles::upset_min_changes;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

FunctionOracle from_bits(const GridShape& shape, std::uint64_t bits) {
  ExplicitFunction t(shape);
  for (PointIndex i = 0; i < shape.size(); ++i) t.set(i, bits >> i & 1U);
  return t.as_oracle();
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------- 1

Outcome one_sidedness() {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes = {{2, 8}, {4, 6}, {8, 4}};
  const char* names[] = {"constant0",          "constant1",       "dictator",
                         "majority_threshold", "random_monotone", "doubly_flip(random_monotone)"};
  std::uint64_t rejections = 0;
  std::uint64_t runs = 0;
  std::string bad;
  for (const auto& [n, d] : shapes) {
    const GridShape shape(n, d);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      std::vector<FunctionOracle> fs;
      for (Family fam : {Family::constant0, Family::constant1, Family::dictator,
                         Family::majority_threshold, Family::random_monotone}) {
        fs.push_back(make_family({.family = fam, .seed = seed}, shape));
      }
      fs.push_back(doubly_flip(fs.back()));
      for (std::size_t k = 0; k < fs.size(); ++k) {
        TesterConfig cfg;
        cfg.trials = 10'000;
        cfg.seed = seed;
        const TesterReport r = run_tester(fs[k], cfg);
        ++runs;
        rejections += r.rejections;
        if (r.rejections != 0 && bad.empty()) {
          bad = std::string(" first: ") + names[k] + " " + shape.to_string() + " seed " +
                std::to_string(seed);
        }
      }
    }
  }
  return {rejections == 0,
          std::to_string(runs) + " runs x 1e4 trials, " + std::to_string(rejections) +
              " rejections" + bad};
}

// ---------------------------------------------------------------- 2

Outcome distance_equivalence() {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  for (const GridShape& shape : {GridShape::general(3, 2), GridShape(2, 3)}) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << shape.size()); ++bits) {
      const FunctionOracle f = from_bits(shape, bits);
      const std::uint64_t changes =
          upset_min_changes(shape, [&](const Point& x) { return f.eval(x); });
      const Rational want(changes, shape.size());
      const DistanceResult m = distance_to_monotonicity(f, DistanceMethod::matching);
      ++checked;
      if (m.distance != want || m.changes != changes) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(checked) + " functions (3x3 and 2^3), " +
                               std::to_string(mismatches) + " mismatches"};
}

// ---------------------------------------------------------------- 3

Outcome walk_equivalence() {
  double worst = 0.0;
  double worst_literal = 0.0;
  bool pass = true;
  for (std::uint32_t n : {2u, 4u}) {
    for (std::uint32_t d : {1u, 2u}) {
      const GridShape shape(n, d);
      for (std::uint32_t tau : {1u, 2u}) {
        for (Direction dir : {Direction::up, Direction::down}) {
          const WalkSpec spec{dir, tau};
          for (const EquivalenceRow& row : compare_exact(shape, spec)) {
            worst = std::max(worst, row.max_abs_diff);
            pass = pass && row.pass;
          }
          for (PointIndex i = 0; i < shape.size(); ++i) {
            const Point x = point_of(shape, i);
            const WalkPmf pmf = exact_pmf(shape, x, spec, Formulation::direct);
            std::vector<double> lit(shape.size());
            for (const auto& [y, p] : literal_walk_law(n, x, tau, dir)) lit[index_of(shape, y)] += p;
            for (PointIndex j = 0; j < shape.size(); ++j) {
              worst_literal = std::max(worst_literal, std::abs(pmf.at(j) - lit[j]));
            }
          }
        }
      }
    }
  }
  pass = pass && worst <= 1e-12 && worst_literal <= 1e-12;
  double min_p = 1.0;
  for (const EquivalenceRow& row :
       compare_statistical(GridShape(8, 3), {Direction::up, 2}, 1'000'000, 20260101)) {
    min_p = std::min(min_p, row.chi.p_value);
    pass = pass && row.pass;
  }
  // Reported only; the down direction is not part of the criterion.
  double down_p = 1.0;
  for (const EquivalenceRow& row :
       compare_statistical(GridShape(8, 3), {Direction::down, 2}, 1'000'000, 20260101)) {
    down_p = std::min(down_p, row.chi.p_value);
  }
  return {pass && min_p > 1e-3,
          "exact max diff " + fmt(worst) + ", vs literal law " + fmt(worst_literal) +
              "; (8,3,2) up min p = " + fmt(min_p) + " (down, not gated: " + fmt(down_p) + ")"};
}

// ---------------------------------------------------------------- 4

Outcome influence_identity() {
  double worst = 0.0;
  double worst_literal = 0.0;
  const GridShape shape(4, 2);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto f = make_family({.family = Family::random_balanced, .seed = seed}, shape);
    const InfluenceResult walk = influence_tilde_exact(f);
    const HypercubeInfluence cube = hypercube_average_influence(f);
    worst = std::max({worst, std::abs(walk.total - cube.total),
                      std::abs(walk.negative - cube.negative)});
    double total = 0.0;
    double negative = 0.0;
    for (PointIndex i = 0; i < shape.size(); ++i) {
      const Point x = point_of(shape, i);
      const bool fx = f.eval(x);
      for (const auto& [y, p] : literal_walk_law(shape.n(), x, 1, Direction::up)) {
        const bool fy = f.eval(y);
        if (fx != fy) total += p;
        if (fx && !fy) negative += p;
      }
    }
    const double scale = static_cast<double>(shape.d()) / static_cast<double>(shape.size());
    worst_literal = std::max({worst_literal, std::abs(walk.total - total * scale),
                              std::abs(walk.negative - negative * scale)});
  }
  return {worst <= 1e-12 && worst_literal <= 1e-12,
          "50 functions on 4^2, walk vs hypercube max diff " + fmt(worst) +
              ", vs literal " + fmt(worst_literal)};
}

// ---------------------------------------------------------------- 5

Outcome influence_implication() {
  std::uint64_t instances = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t counterexamples = 0;
  double peak = 0.0;
  for (std::uint32_t d : {1u, 2u, 4u, 8u, 12u, 16u}) {
    const GridShape shape(2, d);
    const auto weight = [](std::span<const Coord> x) {
      std::uint32_t w = 0;
      for (Coord c : x) w += c - 1;
      return w;
    };
    std::vector<FunctionOracle> fixtures = {
        FunctionOracle(shape, [&](std::span<const Coord> x) { return weight(x) % 2 == 1; },
                       "parity"),
        FunctionOracle(shape, [&](std::span<const Coord> x) { return weight(x) % 2 == 0; },
                       "anti_parity"),
        FunctionOracle(shape, [d, &weight](std::span<const Coord> x) { return 2 * weight(x) < d; },
                       "anti_majority"),
        make_family({.family = Family::anti_dictator}, shape),
    };
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      fixtures.push_back(make_family({.family = Family::random_balanced, .seed = seed}, shape));
    }
    const double root = std::sqrt(static_cast<double>(d));
    for (const FunctionOracle& f : fixtures) {
      const InfluenceResult r = influence_tilde_exact(f);
      ++instances;
      peak = std::max(peak, r.total / (9.0 * root));
      if (r.total > 9.0 * root) {
        ++qualifying;
        if (!(r.negative > root)) ++counterexamples;
      }
    }
  }
  return {counterexamples == 0,
          std::to_string(instances) + " fixtures, " + std::to_string(qualifying) +
              " with I > 9 sqrt(d), " + std::to_string(counterexamples) +
              " counterexamples; max I / (9 sqrt(d)) = " + fmt(peak)};
}

// ---------------------------------------------------------------- 6

Outcome reversibility_forms() {
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  double worst_ratio = 0.0;
  for (std::uint32_t d = 1; d <= 12; ++d) {
    for (std::uint32_t ell = 0; ell <= std::min(d, 4u); ++ell) {
      const std::uint64_t total = choose(d, ell);
      for (Direction dir : {Direction::up, Direction::down}) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
          const auto counts = literal_cube_walk_counts(d, x, ell, dir);
          const auto w = static_cast<std::uint32_t>(std::popcount(x));
          std::vector<Rational> lib;
          if (d <= 10) lib = enumerate_cube_walk(d, x, ell, dir);
          // Every endpoint reachable in principle: y above x (up) or below x (down).
          const std::uint64_t free = dir == Direction::up ? ~x & ((std::uint64_t{1} << d) - 1) : x;
          for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
            const std::uint64_t y = dir == Direction::up ? x | sub : x & ~sub;
            const auto t = static_cast<std::uint32_t>(std::popcount(sub));
            const auto it = counts.find(y);
            const Rational literal(it == counts.end() ? 0 : it->second, total);
            // C(lower weight, l - t) / C(d, l) going up; C(d - upper weight, l - t) going down.
            const Rational formula(
                t > ell ? 0
                        : (dir == Direction::up ? choose(w, ell - t) : choose(d - w, ell - t)),
                total);
            const std::uint32_t lower = dir == Direction::up ? w : w - t;
            const Rational closed =
                t > ell ? Rational(0) : cube_walk_closed_form_exact(d, lower, t, ell, dir);
            ++pairs;
            if (literal != formula || closed != formula || (d <= 10 && lib[y] != formula)) {
              ++mismatches;
            }
            if (sub == 0) break;
          }
        }
      }
      for (std::uint32_t w = 0; w <= d; ++w) {
        for (std::uint32_t t = 0; t <= ell && w + t <= d; ++t) {
          // x = low w bits, x' adds the next t bits.
          const std::uint64_t x = (std::uint64_t{1} << w) - 1;
          const std::uint64_t xp = (std::uint64_t{1} << (w + t)) - 1;
          const auto up = literal_cube_walk_counts(d, x, ell, Direction::up);
          const auto down = literal_cube_walk_counts(d, xp, ell, Direction::down);
          const auto u = up.find(xp);
          const auto b = down.find(x);
          if (b == down.end()) continue;
          const double ratio = static_cast<double>(u == up.end() ? 0 : u->second) /
                               static_cast<double>(b->second);
          const double product = reversibility_product(d, w, t, ell);
          const double rel = ratio == 0.0 ? std::abs(product) : std::abs(product - ratio) / ratio;
          worst_ratio = std::max(worst_ratio, rel);
        }
      }
    }
  }
  return {mismatches == 0 && worst_ratio <= 1e-12,
          std::to_string(pairs) + " (x, x') pairs, " + std::to_string(mismatches) +
              " rational mismatches; product vs ratio max rel diff " + fmt(worst_ratio)};
}

// ---------------------------------------------------------------- 7

Outcome exact_vs_monte_carlo() {
  const GridShape shape(2, 1);
  const auto f = make_family({.family = Family::anti_dictator}, shape);
  TesterConfig cfg;
  const double exact = exact_reject_prob(f, cfg);
  const double literal = literal_trial_reject_prob(2, 1, resolve_schedule(cfg, shape),
                                                   [&](const Point& x) { return f.eval(x); });
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.trials = 100'000;
    cfg.seed = seed;
    const TesterReport r = run_tester(f, cfg);
    covered += wilson_interval(r.rejections, r.trials, kZ99).contains(exact);
  }
  return {covered == 20 && std::abs(exact - literal) <= 1e-12,
          "exact " + fmt(exact) + " (literal " + fmt(literal) + "), covered by 99% CI for " +
              std::to_string(covered) + "/20 seeds"};
}

// ---------------------------------------------------------------- 8

Outcome rejection_shape() {
  std::vector<double> ds;
  std::vector<double> rates;
  double worst_half = 0.0;
  std::string detail;
  for (std::uint32_t d : {4u, 16u, 64u}) {
    const auto f = make_family({.family = Family::anti_dictator}, GridShape(8, d));
    TesterConfig cfg;
    cfg.trials = 50'000;
    cfg.seed = 8;
    cfg.epsilon = 0.5;
    const TesterReport r = run_tester(f, cfg);
    ds.push_back(d);
    rates.push_back(r.reject_rate);
    worst_half = std::max(worst_half, r.wilson_95.half_width());
    detail += "d=" + std::to_string(d) + ":" + fmt(r.reject_rate) + " ";
  }
  const bool non_increasing = rates[0] >= rates[1] && rates[1] >= rates[2];
  const LineFit fit = loglog_fit(ds, rates);
  return {non_increasing && fit.slope >= -1.0 && fit.slope <= -0.25 && worst_half < 0.005,
          detail + "slope " + fmt(fit.slope) + " (want [-1, -0.25]), max CI half-width " +
              fmt(worst_half)};
}

// ---------------------------------------------------------------- 9

Outcome domain_reduction() {
  const GridShape shape(16, 4);
  const auto f = make_family({.family = Family::surface, .seed = 1}, shape);
  const Rational eps = distance_to_monotonicity(f, DistanceMethod::covering_flow).distance;
  const double e = eps.convert_to<double>();
  constexpr int kReps = 200;
  std::vector<double> dist(kReps);
  std::uint64_t hits = 0;
  for (int r = 0; r < kReps; ++r) {
    Rng rng = Rng::stream(9, static_cast<std::uint64_t>(r), 0xd2);
    const FunctionOracle g = restrict_to_subgrid(f, sample_subgrid(shape, 8, rng));
    const Rational v = distance_to_monotonicity(g, DistanceMethod::covering_flow).distance;
    dist[r] = v.convert_to<double>();
    hits += v >= eps / 4;
  }
  double mean = 0.0;
  for (double v : dist) mean += v / kReps;
  double var = 0.0;
  for (double v : dist) var += (v - mean) * (v - mean) / (kReps - 1);
  const double half = kZ95 * std::sqrt(var / kReps);
  const Interval frac = wilson_interval(hits, kReps, kZ95);
  const double p = static_cast<double>(hits) / kReps;
  return {mean >= e / 2.0 - half && p >= e / 4.0 - (p - frac.low),
          "eps " + eps.str() + ", mean restricted distance " + fmt(mean) + " +- " + fmt(half) +
              " vs eps/2 " + fmt(e / 2) + ", Pr[>= eps/4] " + fmt(p) + " vs eps/4 " +
              fmt(e / 4)};
}

// ---------------------------------------------------------------- 10

struct SideMax {
  std::uint64_t degree = 0;
  std::uint64_t per_dim = 0;
  std::uint64_t dims = 0;
};

SideMax side_max(const std::vector<std::pair<PointIndex, std::int32_t>>& ends) {
  std::map<PointIndex, std::map<std::int32_t, std::uint64_t>> deg;
  for (const auto& [v, i] : ends) ++deg[v][i];
  SideMax s;
  for (const auto& [v, per] : deg) {
    std::uint64_t total = 0;
    for (const auto& [i, c] : per) {
      total += c;
      s.per_dim = std::max(s.per_dim, c);
    }
    s.degree = std::max(s.degree, total);
    s.dims = std::max<std::uint64_t>(s.dims, per.size());
  }
  return s;
}

Outcome talagrand_properties() {
  Rng rng(10);
  int graphs = 0;
  int failures = 0;
  std::size_t largest = 0;
  std::uint64_t seed = 0;
  while (graphs < 100) {
    const auto d = static_cast<std::uint32_t>(2 + rng.below(4));
    const auto f = make_family({.family = Family::random_balanced, .seed = ++seed}, GridShape(2, d));
    const ViolationGraph full = build_violation_graph(f, ViolationMode::augmented_axis);
    if (full.empty()) continue;
    const std::size_t m = std::min<std::size_t>(full.edge_count(), 1 + rng.below(22));
    std::vector<std::size_t> ids(full.edge_count());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
    for (std::size_t k = 0; k < m; ++k) std::swap(ids[k], ids[k + rng.below(ids.size() - k)]);
    ids.resize(m);
    const ViolationGraph g = full.subgraph(ids);
    ++graphs;
    largest = std::max(largest, m);

    std::vector<std::pair<PointIndex, std::int32_t>> lows, highs;
    std::vector<std::uint64_t> lo, hi;
    std::vector<std::uint32_t> dim;
    for (const ViolationEdge& e : g.edges()) {
      lows.emplace_back(e.low, e.dimension);
      highs.emplace_back(e.high, e.dimension);
      lo.push_back(e.low);
      hi.push_back(e.high);
      dim.push_back(static_cast<std::uint32_t>(e.dimension));
    }
    const SideMax x = side_max(lows);
    const SideMax y = side_max(highs);
    const DegreeProfile prof = degree_profile(g);
    const bool degrees_ok = x.degree <= x.per_dim * x.dims && y.degree <= y.per_dim * y.dims &&
                     prof.degree_bounds_hold() && prof.x.max_degree == x.degree &&
                     prof.y.max_degree == y.degree;

    const double tal = talagrand_objective(g, true).value;
    const double brute = brute_talagrand(lo, hi, dim);
    const std::size_t parts = 2 + rng.below(3);
    std::vector<std::vector<std::size_t>> split(parts);
    for (std::size_t k = 0; k < g.edge_count(); ++k) split[rng.below(parts)].push_back(k);
    double sum = 0.0;
    for (const auto& part : split) sum += talagrand_objective(g.subgraph(part), true).value;
    const bool tal_ok = std::abs(tal - brute) <= 1e-9 &&
                        static_cast<double>(g.edge_count()) + 1e-9 >= tal && sum + 1e-9 >= tal;
    failures += !(degrees_ok && tal_ok);
  }
  return {failures == 0, std::to_string(graphs) + " subgraphs (m <= " + std::to_string(largest) +
                             "), " + std::to_string(failures) + " failures"};
}

// ---------------------------------------------------------------- 11

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int with_threads(const char* threads, const std::vector<std::string>& args) {
  setenv("HGM_THREADS", threads, 1);
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

Outcome reproducibility() {
  set_worker_count(0);
  const fs::path dir = fs::temp_directory_path() / ("hgmono_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"test", "--family", "anti_dictator", "--n", "8", "--d", "6", "--trials", "20000"},
      {"test", "--family", "surface", "--n", "8", "--d", "3", "--full", "--eps", "0.3"},
      {"distance", "--family", "surface", "--n", "8", "--d", "3", "--seed", "7"},
      {"equiv", "--n", "4", "--d", "2", "--tau", "2", "--samples", "200000"},
      {"reversibility", "--d", "16", "--ell", "3", "--allow-beyond-cap", "--pairs", "50"},
      {"sweep", "--family", "anti_dictator,dictator", "--n", "8", "--d", "4,8", "--trials",
       "5000", "--fit"},
      {"domain-reduce", "--family", "surface", "--n", "8", "--d", "3", "--k", "4", "--reps",
       "40"},
  };
  int identical = 0;
  std::string bad;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    const fs::path a = dir / ("a" + std::to_string(c) + ".csv");
    const fs::path b = dir / ("b" + std::to_string(c) + ".csv");
    const fs::path r = dir / ("r" + std::to_string(c) + ".csv");
    std::vector<std::string> args = commands[c];
    args.insert(args.end(), {"--out", a.string()});
    with_threads("1", args);
    args.back() = b.string();
    with_threads("3", args);
    with_threads("4", {"replay", "--in", a.string(), "--out", r.string()});
    const std::string first = slurp(a);
    if (!first.empty() && first == slurp(b) && first == slurp(r)) {
      ++identical;
    } else if (bad.empty()) {
      bad = " first difference: " + commands[c][0];
    }
  }
  unsetenv("HGM_THREADS");
  fs::remove_all(dir);
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical across HGM_THREADS=1,3 and replay at 4" + bad};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace hgmono

int main(int argc, char** argv) {
  using namespace hgmono;
  const std::vector<Criterion> all = {
      {1, "one-sidedness", one_sidedness},
      {2, "distance oracle equivalence", distance_equivalence},
      {3, "walk formulation equivalence", walk_equivalence},
      {4, "influence hypercube identity", influence_identity},
      {5, "high influence implies negative influence", influence_implication},
      {6, "reversibility closed forms", reversibility_forms},
      {7, "exact vs Monte Carlo tester", exact_vs_monte_carlo},
      {8, "rejection-rate shape", rejection_shape},
      {9, "domain reduction", domain_reduction},
      {10, "degree bounds and Talagrand subadditivity", talagrand_properties},
      {11, "CSV reproducibility", reproducibility},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
