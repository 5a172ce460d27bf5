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

#include "hgmono/influence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "hgmono/errors.hpp"
#include "hgmono/layers.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/parallel.hpp"
#include "hgmono/rng.hpp"

namespace hgmono {
namespace {

constexpr std::uint64_t kInfluenceTag = 0x1f1;
constexpr std::uint64_t kClassifierTag = 0xc1a;
constexpr std::uint64_t kTypicalTag = 0x7e9;

ProbabilityEstimate exact_estimate(double p) { return {p, {p, p}, true, 0}; }

ProbabilityEstimate mc_estimate(std::uint64_t hits, std::uint64_t samples, double z) {
  return {static_cast<double>(hits) / static_cast<double>(samples),
          wilson_interval(hits, samples, z), false, samples};
}

double walk_pmf_cost(const GridShape& shape, std::uint32_t tau) {
  return static_cast<double>(shape.size()) * shape.d() * (selected_count(tau, shape.d()) + 1);
}

// Pr_{z' ~ walk(z)}[f(z') == value] from the exact pmf.
double exact_hit(const ExplicitFunction& table, std::span<const Coord> z, std::uint32_t ell,
                 Direction dir, bool value, std::uint64_t budget) {
  const WalkPmf pmf = exact_pmf(table.shape(), z, {dir, ell}, Formulation::direct, budget);
  KahanSum s;
  const auto t = pmf.table();
  for (PointIndex i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && table.get(i) == value) s += t[i];
  }
  return s.value();
}

void check_axis_violation(const FunctionOracle& f, std::span<const Coord> x,
                          std::span<const Coord> y) {
  std::uint32_t differing = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) throw DomainError("edge endpoints are not ordered");
    differing += x[i] != y[i];
  }
  if (differing != 1) throw DomainError("edge must differ in exactly one coordinate");
  if (!f.eval(x) || f.eval(y)) throw DomainError("edge is not a violation");
}

// Points of I(x, y) for an axis edge.
std::vector<Point> segment(std::span<const Coord> x, std::span<const Coord> y) {
  std::size_t dim = 0;
  while (x[dim] == y[dim]) ++dim;
  std::vector<Point> out;
  for (Coord v = x[dim]; v <= y[dim]; ++v) {
    Point z(std::vector<Coord>(x.begin(), x.end()));
    z[dim] = v;
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

Verdict decide_at_least(const ProbabilityEstimate& p, double threshold) {
  if (p.exact) return p.value >= threshold ? Verdict::yes : Verdict::no;
  if (p.ci.low >= threshold) return Verdict::yes;
  if (p.ci.high < threshold) return Verdict::no;
  return Verdict::undecided;
}

Verdict decide_at_most(const ProbabilityEstimate& p, double threshold) {
  if (p.exact) return p.value <= threshold ? Verdict::yes : Verdict::no;
  if (p.ci.high <= threshold) return Verdict::yes;
  if (p.ci.low > threshold) return Verdict::no;
  return Verdict::undecided;
}

InfluenceResult influence_tilde_exact(const FunctionOracle& f, std::uint64_t budget) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const std::uint32_t n = shape.n();
  const std::uint32_t d = shape.d();
  if (static_cast<double>(shape.size()) * d * n > static_cast<double>(budget)) {
    throw ResourceError("exact influence of " + shape.to_string() + " exceeds budget");
  }
  const ExplicitFunction table = ExplicitFunction::tabulate(f);
  std::vector<std::vector<double>> law(n + 1);
  for (Coord u = 1; u <= n; ++u) law[u] = coordinate_step_law(n, u, Direction::up);
  const auto size = static_cast<std::int64_t>(shape.size());
  std::vector<double> total(static_cast<std::size_t>(size));
  std::vector<double> negative(static_cast<std::size_t>(size));
#pragma omp parallel num_threads(worker_count())
  {
    std::vector<Coord> x(d);
#pragma omp for schedule(static)
    for (std::int64_t xi = 0; xi < size; ++xi) {
      const auto i = static_cast<PointIndex>(xi);
      point_of(shape, i, x);
      const bool fx = table.get(i);
      double change = 0.0;
      PointIndex stride = 1;
      for (std::uint32_t k = 0; k < d; ++k) {
        for (Coord v = x[k] + 1; v <= n; ++v) {
          const PointIndex j = i + (v - x[k]) * stride;
          if (table.get(j) != fx) change += law[x[k]][v];
        }
        stride *= n;
      }
      // d * (1/d) * sum over the chosen coordinate.
      total[static_cast<std::size_t>(xi)] = change;
      negative[static_cast<std::size_t>(xi)] = fx ? change : 0.0;
    }
  }
  InfluenceResult r;
  r.total = kahan_total(total) / static_cast<double>(size);
  r.negative = kahan_total(negative) / static_cast<double>(size);
  r.total_ci = {r.total, r.total};
  r.negative_ci = {r.negative, r.negative};
  return r;
}

InfluenceResult influence_tilde_mc(const FunctionOracle& f, std::uint64_t samples,
                                   std::uint64_t seed, double z) {
  const GridShape& shape = f.shape();
  if (samples == 0) throw DomainError("influence estimate needs samples >= 1");
  std::uint64_t changed = 0;
  std::uint64_t dropped = 0;
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(worker_count()) reduction(+ : changed, dropped)
  {
    Querier q(f);
    std::vector<Coord> x(shape.d());
    std::vector<Coord> y(shape.d());
    WalkScratch scratch;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < count; ++s) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s), kInfluenceTag);
      for (Coord& c : x) c = static_cast<Coord>(rng.below(shape.n()) + 1);
      walk_into(shape, x, 1, Direction::up, rng, y, scratch);
      const bool fx = q(std::span<const Coord>(x));
      const bool fy = q(std::span<const Coord>(y));
      changed += fx != fy;
      dropped += fx && !fy;
    }
  }
  const double d = shape.d();
  InfluenceResult r;
  r.exact = false;
  r.samples = samples;
  r.total = d * static_cast<double>(changed) / static_cast<double>(samples);
  r.negative = d * static_cast<double>(dropped) / static_cast<double>(samples);
  const Interval ct = wilson_interval(changed, samples, z);
  const Interval cn = wilson_interval(dropped, samples, z);
  r.total_ci = {d * ct.low, d * ct.high};
  r.negative_ci = {d * cn.low, d * cn.high};
  return r;
}

InfluenceResult influence_tilde(const FunctionOracle& f, std::uint64_t budget,
                                std::uint64_t mc_samples, std::uint64_t seed) {
  try {
    return influence_tilde_exact(f, budget);
  } catch (const ResourceError&) {
    InfluenceResult r = influence_tilde_mc(f, mc_samples, seed);
    r.fell_back = true;
    return r;
  }
}

HypercubeInfluence hypercube_average_influence(const FunctionOracle& f, std::uint64_t budget) {
  const GridShape& shape = f.shape();
  shape.log2n();
  const std::uint32_t n = shape.n();
  const std::uint32_t d = shape.d();
  const std::vector<double> joint = cube_pair_law(n);
  std::vector<std::pair<Coord, Coord>> pairs;
  std::vector<double> weight;
  for (Coord a = 1; a <= n; ++a) {
    for (Coord b = a + 1; b <= n; ++b) {
      const double w = joint[a * (n + 1) + b];
      if (w > 0.0) {
        pairs.emplace_back(a, b);
        weight.push_back(w);
      }
    }
  }
  const double cubes = std::pow(static_cast<double>(pairs.size()), d);
  if (cubes * std::ldexp(1.0, static_cast<int>(d)) * d > static_cast<double>(budget)) {
    throw ResourceError("hypercube average influence exceeds budget");
  }
  const ExplicitFunction table = ExplicitFunction::tabulate(f);
  std::vector<std::size_t> choice(d, 0);
  std::vector<Coord> x(d);
  std::vector<Coord> y(d);
  KahanSum total;
  KahanSum negative;
  const double vertex_weight = std::ldexp(1.0, -static_cast<int>(d));
  while (true) {
    double p = 1.0;
    for (std::uint32_t i = 0; i < d; ++i) p *= weight[choice[i]];
    // I_H = E_{x in H}[#{i : x_i = a_i, f(x) != f(x with b_i)}].
    double inf_total = 0.0;
    double inf_negative = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      for (std::uint32_t i = 0; i < d; ++i) {
        x[i] = (mask >> i & 1U) ? pairs[choice[i]].second : pairs[choice[i]].first;
      }
      const bool fx = table.eval(x);
      for (std::uint32_t i = 0; i < d; ++i) {
        if (mask >> i & 1U) continue;
        y = x;
        y[i] = pairs[choice[i]].second;
        const bool fy = table.eval(y);
        if (fx != fy) inf_total += 1.0;
        if (fx && !fy) inf_negative += 1.0;
      }
    }
    total += p * inf_total * vertex_weight;
    negative += p * inf_negative * vertex_weight;
    std::uint32_t i = 0;
    while (i < d && ++choice[i] == pairs.size()) choice[i++] = 0;
    if (i == d) break;
  }
  return {total.value(), negative.value()};
}

ProbabilityEstimate change_probability(const FunctionOracle& f, std::span<const Coord> x,
                                       std::uint32_t tau, Direction dir,
                                       const ClassifierOptions& opts) {
  const GridShape& shape = f.shape();
  const bool fx = f.eval(x);
  if (opts.samples == 0) {
    const ExplicitFunction table = ExplicitFunction::tabulate(f);
    return exact_estimate(exact_hit(table, x, tau, dir, !fx, opts.budget));
  }
  Rng rng = Rng::stream(opts.seed, 0, kClassifierTag);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < opts.samples; ++s) {
    hits += f.eval(sample_walk(shape, x, tau, dir, rng)) != fx;
  }
  return mc_estimate(hits, opts.samples, opts.z);
}

Verdict persistence_classify(const FunctionOracle& f, std::uint32_t tau, double beta,
                             std::span<const Coord> x, Direction dir,
                             const ClassifierOptions& opts) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0,1)");
  return decide_at_most(change_probability(f, x, tau, dir, opts), beta);
}

PersistenceScan non_persistent_fraction(const FunctionOracle& f, std::uint32_t tau,
                                        double beta, std::uint64_t budget) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0,1)");
  const GridShape& shape = f.shape();
  shape.log2n();
  if (walk_pmf_cost(shape, tau) > static_cast<double>(budget)) {
    throw ResourceError("persistence scan exceeds budget");
  }
  const ExplicitFunction table = ExplicitFunction::tabulate(f);
  const auto size = static_cast<std::int64_t>(shape.size());
  std::uint64_t failing = 0;
#pragma omp parallel num_threads(worker_count()) reduction(+ : failing)
  {
    std::vector<Coord> x(shape.d());
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t xi = 0; xi < size; ++xi) {
      point_of(shape, static_cast<PointIndex>(xi), x);
      const bool fx = table.get(static_cast<PointIndex>(xi));
      const double up = exact_hit(table, x, tau, Direction::up, !fx, budget);
      const double down = exact_hit(table, x, tau, Direction::down, !fx, budget);
      failing += up > beta || down > beta;
    }
  }
  PersistenceScan scan;
  scan.points = static_cast<std::uint64_t>(size);
  scan.non_persistent = failing;
  scan.fraction = static_cast<double>(failing) / static_cast<double>(size);
  scan.measured_constant =
      tau == 0 ? 0.0 : scan.fraction * beta * std::sqrt(static_cast<double>(shape.d())) / tau;
  return scan;
}

ProbabilityEstimate mzb_probability(const FunctionOracle& f, std::uint32_t ell,
                                    std::span<const Coord> z, const ClassifierOptions& opts) {
  if (opts.samples == 0) {
    const ExplicitFunction table = ExplicitFunction::tabulate(f);
    return exact_estimate(exact_hit(table, z, ell, Direction::down, false, opts.budget));
  }
  Rng rng = Rng::stream(opts.seed, 1, kClassifierTag);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < opts.samples; ++s) {
    hits += !f.eval(sample_downwalk(f.shape(), z, ell, rng));
  }
  return mc_estimate(hits, opts.samples, opts.z);
}

Verdict mzb_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> z,
                     const ClassifierOptions& opts) {
  return decide_at_least(mzb_probability(f, ell, z, opts), kMzbThreshold);
}

ProbabilityEstimate red_probability(const FunctionOracle& f, std::uint32_t ell,
                                    std::span<const Coord> x, std::span<const Coord> y,
                                    const ClassifierOptions& opts) {
  check_axis_violation(f, x, y);
  const GridShape& shape = f.shape();
  const std::vector<Point> interior = segment(x, y);
  const bool inner_exact = walk_pmf_cost(shape, ell) <= static_cast<double>(opts.budget);
  std::optional<ExplicitFunction> table;
  if (inner_exact) table = ExplicitFunction::tabulate(f);
  std::unordered_map<PointIndex, bool> mzb_cache;
  const auto is_mzb = [&](const Point& w) {
    if (!inner_exact) {
      ClassifierOptions inner = opts;
      inner.samples = std::max<std::uint64_t>(opts.samples, 1000);
      inner.seed = mix64(opts.seed ^ index_of(shape, w));
      return mzb_probability(f, ell, w, inner).value >= kMzbThreshold;
    }
    const PointIndex key = index_of(shape, w);
    const auto it = mzb_cache.find(key);
    if (it != mzb_cache.end()) return it->second;
    const bool v = exact_hit(*table, w, ell, Direction::down, false, opts.budget) >= kMzbThreshold;
    mzb_cache.emplace(key, v);
    return v;
  };
  if (opts.samples == 0) {
    if (!inner_exact) throw ResourceError("exact red classification exceeds budget");
    KahanSum s;
    for (const Point& z : interior) {
      const WalkPmf pmf = exact_pmf(shape, z, {Direction::up, ell}, Formulation::direct,
                                    opts.budget);
      const auto t = pmf.table();
      for (PointIndex i = 0; i < t.size(); ++i) {
        if (t[i] > 0.0 && is_mzb(point_of(shape, i))) s += t[i];
      }
    }
    return exact_estimate(s.value() / static_cast<double>(interior.size()));
  }
  Rng rng = Rng::stream(opts.seed, 2, kClassifierTag);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    const Point& z = interior[rng.below(interior.size())];
    hits += is_mzb(sample_upwalk(shape, z, ell, rng));
  }
  return mc_estimate(hits, opts.samples, opts.z);
}

Verdict red_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> x,
                     std::span<const Coord> y, const ClassifierOptions& opts) {
  return decide_at_least(red_probability(f, ell, x, y, opts), kRedBlueThreshold);
}

ProbabilityEstimate blue_probability(const FunctionOracle& f, std::uint32_t ell,
                                     std::span<const Coord> x, std::span<const Coord> y,
                                     const ClassifierOptions& opts) {
  check_axis_violation(f, x, y);
  const GridShape& shape = f.shape();
  const std::vector<Point> interior = segment(x, y);
  if (opts.samples == 0) {
    const ExplicitFunction table = ExplicitFunction::tabulate(f);
    KahanSum s;
    for (const Point& z : interior) {
      s += exact_hit(table, z, ell, Direction::down, true, opts.budget);
    }
    return exact_estimate(s.value() / static_cast<double>(interior.size()));
  }
  Rng rng = Rng::stream(opts.seed, 3, kClassifierTag);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < opts.samples; ++k) {
    const Point& z = interior[rng.below(interior.size())];
    hits += f.eval(sample_downwalk(shape, z, ell, rng));
  }
  return mc_estimate(hits, opts.samples, opts.z);
}

Verdict blue_classify(const FunctionOracle& f, std::uint32_t ell, std::span<const Coord> x,
                      std::span<const Coord> y, const ClassifierOptions& opts) {
  return decide_at_least(blue_probability(f, ell, x, y, opts), kRedBlueThreshold);
}

ProbabilityEstimate typicality_probability(const GridShape& shape, std::span<const Coord> x,
                                           double c, double eps) {
  shape.log2n();
  const std::uint32_t d = shape.d();
  // dist[w] = Pr[weight = w] after the coordinates processed so far.
  std::vector<double> dist(d + 1, 0.0);
  dist[0] = 1.0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const std::vector<double> law = partner_law(shape.n(), x[i]);
    double p_top = 0.0;
    for (Coord v = 1; v < x[i]; ++v) p_top += law[v];
    for (std::uint32_t w = i + 2; w-- > 0;) {
      dist[w] = dist[w] * (1.0 - p_top) + (w > 0 ? dist[w - 1] * p_top : 0.0);
    }
  }
  KahanSum inside;
  for (std::uint32_t w = 0; w <= d; ++w) {
    if (weight_in_middle_layers(w, d, c, eps)) inside += dist[w];
  }
  return exact_estimate(std::min(1.0, inside.value()));
}

ProbabilityEstimate typicality_estimate(const GridShape& shape, std::span<const Coord> x,
                                        double c, double eps, std::uint64_t samples,
                                        std::uint64_t seed, double z) {
  if (samples == 0) throw DomainError("typicality estimate needs samples >= 1");
  Rng rng = Rng::stream(seed, 0, kTypicalTag);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    hits += middle_layer_member(sample_hypercube_at(shape, x, rng), x, c, eps);
  }
  return mc_estimate(hits, samples, z);
}

bool is_typical(double probability, std::uint32_t d, double eps) {
  return probability >= 1.0 - std::pow(eps / d, 5.0);
}

double typical_fraction(const GridShape& shape, double c, double eps) {
  const auto size = static_cast<std::int64_t>(shape.size());
  std::uint64_t typical = 0;
#pragma omp parallel num_threads(worker_count()) reduction(+ : typical)
  {
    std::vector<Coord> x(shape.d());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < size; ++i) {
      point_of(shape, static_cast<PointIndex>(i), x);
      typical += is_typical(typicality_probability(shape, x, c, eps).value, shape.d(), eps);
    }
  }
  return static_cast<double>(typical) / static_cast<double>(size);
}

double typical_fraction_bound(std::uint32_t d, double c, double eps) {
  return 1.0 - std::pow(eps / d, c - 5.0);
}

}  // namespace hgmono
