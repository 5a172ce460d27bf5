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

#include "hgmono/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hgmono/distance.hpp"
#include "hgmono/equivalence.hpp"
#include "hgmono/errors.hpp"
#include "hgmono/families.hpp"
#include "hgmono/layers.hpp"
#include "hgmono/numeric.hpp"
#include "hgmono/parallel.hpp"
#include "hgmono/stats.hpp"
#include "hgmono/tester.hpp"
#include "hgmono/violation.hpp"

namespace hgmono {
namespace {

constexpr std::uint64_t kSweepTag = 0x5e7;
constexpr std::uint64_t kReduceTag = 0xd2;
constexpr std::uint64_t kPairTag = 0x9a1;
constexpr char kHeaderPrefix[] = "#@ ";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec == std::errc() && res.ptr == text.data() + text.size()) return value;
  double v = 0.0;
  const auto dres = std::from_chars(text.data(), text.data() + text.size(), v);
  if (dres.ec == std::errc() && dres.ptr == text.data() + text.size() && v == std::floor(v) &&
      v >= static_cast<double>(std::numeric_limits<T>::min()) &&
      v <= static_cast<double>(std::numeric_limits<T>::max())) {
    return static_cast<T>(v);
  }
  throw ConfigError("invalid value '" + text + "' for --" + key);
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid value '" + text + "' for --" + key);
  }
  return v;
}

// Options are stored as the strings the user gave so that the resolved
// configuration can be written back verbatim.
class Params {
 public:
  CLI::Option* option(CLI::App& app, const std::string& key, const std::string& def,
                      const std::string& help) {
    auto it = values_.emplace(key, def).first;
    CLI::Option* o = app.add_option("--" + key, it->second, help);
    if (!def.empty()) o->default_str(def);
    return o;
  }
  CLI::Option* flag(CLI::App& app, const std::string& key, const std::string& help) {
    auto it = flags_.emplace(key, false).first;
    return app.add_flag("--" + key, it->second, help);
  }
  // Paths that name outputs; never serialized.
  CLI::Option* path(CLI::App& app, const std::string& key, const std::string& help) {
    auto it = paths_.emplace(key, "").first;
    return app.add_option("--" + key, it->second, help);
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }
  const std::string& path(const std::string& key) const { return paths_.at(key); }
  bool on(const std::string& key) const { return flags_.at(key); }
  std::uint64_t u64(const std::string& key) const {
    return parse_integer<std::uint64_t>(key, str(key));
  }
  std::uint32_t u32(const std::string& key) const {
    return parse_integer<std::uint32_t>(key, str(key));
  }
  std::int64_t i64(const std::string& key) const {
    return parse_integer<std::int64_t>(key, str(key));
  }
  double real(const std::string& key) const { return parse_real(key, str(key)); }
  void set(const std::string& key, std::string value) { values_.at(key) = std::move(value); }

  ConfigEntries entries() const {
    std::map<std::string, std::string> all;
    for (const auto& [k, v] : values_) {
      if (!v.empty()) all.emplace(k, v);
    }
    for (const auto& [k, v] : flags_) all.emplace(k, v ? "true" : "false");
    return ConfigEntries(all.begin(), all.end());
  }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
  std::map<std::string, std::string> paths_;
};

class Csv {
 public:
  Csv(const std::string& command, const ConfigEntries& config) {
    body_ << kHeaderPrefix << "command=" << command << '\n';
    for (const auto& [k, v] : config) body_ << kHeaderPrefix << k << '=' << v << '\n';
  }
  void columns(std::initializer_list<std::string_view> names) { line(names); }
  void row(const std::vector<std::string>& cells) { line(cells); }
  void comment(const std::string& text) { body_ << "# " << text << '\n'; }
  std::string str() const { return body_.str(); }

 private:
  template <typename Range>
  void line(const Range& cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) body_ << ',';
      body_ << c;
      first = false;
    }
    body_ << '\n';
  }
  std::ostringstream body_;
};

std::string num(double v) { return format_double(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::uint32_t v) { return std::to_string(v); }
std::string boolean(bool v) { return v ? "true" : "false"; }

std::string coords(std::span<const Coord> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(x[i]);
  }
  return s;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

void add_shape(CLI::App& app, Params& p, bool need_n = true) {
  auto* n = p.option(app, "n", need_n ? "" : "2", "Side length n");
  if (need_n) n->required();
  p.option(app, "d", "", "Dimension d")->required();
}

void add_family(CLI::App& app, Params& p) {
  p.option(app, "family", "", "Function family")->required();
  p.option(app, "coord", "1", "Dictator coordinate (1-based)");
  p.option(app, "threshold", "-1", "Dictator or majority threshold; -1 selects the default");
  p.option(app, "family-seed", "", "Seed for random families; defaults to --seed");
  p.option(app, "generators", "0", "Generator count for random_monotone; 0 selects 4");
  p.option(app, "table", "", "Truth-table file for the explicit family");
}

void add_common(CLI::App& app, Params& p) {
  p.option(app, "seed", "0", "Master seed");
  p.option(app, "budget", std::to_string(kDefaultPmfBudget), "Enumeration budget");
  p.path(app, "out", "Output CSV path; stdout when omitted");
}

FunctionOracle family_from(Params& p, const GridShape& shape) {
  if (p.str("family-seed").empty()) p.set("family-seed", p.str("seed"));
  FamilySpec spec;
  spec.family = parse_family(p.str("family"));
  spec.coord = p.u32("coord");
  spec.threshold = p.i64("threshold");
  spec.seed = p.u64("family-seed");
  spec.generators = p.u32("generators");
  spec.path = p.str("table");
  return make_family(spec, shape);
}

std::vector<std::uint32_t> u32_list(const std::string& key, const std::string& text) {
  std::vector<std::uint32_t> out;
  for (const std::string& s : split_list(text)) out.push_back(parse_integer<std::uint32_t>(key, s));
  return out;
}

struct Command {
  CLI::App* app = nullptr;
  Params params;
  std::function<int(Params&, std::ostream&)> run;
};

// ---------------------------------------------------------------- test

int cmd_test(Params& p, std::ostream& out) {
  const GridShape shape(p.u32("n"), p.u32("d"));
  const FunctionOracle f = family_from(p, shape);
  TesterConfig cfg;
  cfg.trials = p.u64("trials");
  cfg.seed = p.u64("seed");
  cfg.epsilon = p.real("eps");
  cfg.tau_schedule = u32_list("tau", p.str("tau"));
  const std::string family(family_name(parse_family(p.str("family"))));

  if (p.on("full")) {
    if (p.u32("k") != 0 || p.u32("reps") != 0) {
      cfg.domain_reduction = DomainReduction{p.u32("k"), p.u32("reps")};
    }
    const FullTesterResult r = run_full_tester(f, cfg.epsilon, cfg);
    Csv csv("test", p.entries());
    csv.columns({"family", "n", "d", "eps", "mode", "k_formula", "k_used", "outer_reps",
                 "inner_trials", "pairs", "rejected", "queries", "witness_low",
                 "witness_high", "seed"});
    csv.row({family, num(shape.n()), num(shape.d()), p.str("eps"),
             r.fallback ? "fallback" : "subgrid", num(r.k_formula), num(r.k_used),
             num(r.outer_reps), num(r.inner_trials), num(r.pairs), boolean(r.rejected),
             num(r.queries), r.witness ? coords(r.witness->low) : "",
             r.witness ? coords(r.witness->high) : "", p.str("seed")});
    emit(csv.str(), p.path("out"), out);
    return p.on("single-shot") && r.rejected ? kExitRejected : kExitOk;
  }

  const TesterReport r = p.on("serial") ? run_tester_serial(f, cfg) : run_tester(f, cfg);
  Csv csv("test", p.entries());
  csv.columns({"family", "n", "d", "tau", "trials", "rejections", "reject_rate", "ci_low",
               "ci_high", "queries", "seed"});
  auto add = [&](const std::string& tau, std::uint64_t trials, std::uint64_t rejections,
                 std::uint64_t queries) {
    const Interval ci = wilson_interval(rejections, trials, kZ95);
    const double rate = trials == 0 ? 0.0 : static_cast<double>(rejections) / trials;
    csv.row({family, num(shape.n()), num(shape.d()), tau, num(trials), num(rejections),
             num(rate), num(ci.low), num(ci.high), num(queries), p.str("seed")});
  };
  for (const TauStats& t : r.per_tau) add(num(t.tau), t.trials, t.rejections, t.queries);
  add("all", r.trials, r.rejections, r.total_queries);
  emit(csv.str(), p.path("out"), out);
  return p.on("single-shot") && r.rejections > 0 ? kExitRejected : kExitOk;
}

// ------------------------------------------------------------ distance

int cmd_distance(Params& p, std::ostream& out) {
  const GridShape shape = GridShape::general(p.u32("n"), p.u32("d"));
  const FunctionOracle f = family_from(p, shape);
  const std::string& method_name = p.str("method");
  DistanceMethod method;
  if (method_name == "flow") {
    method = DistanceMethod::covering_flow;
  } else if (method_name == "matching") {
    method = DistanceMethod::matching;
  } else {
    throw ConfigError("unknown distance method '" + method_name + "'");
  }
  const std::uint64_t budget = p.u64("budget");
  const DistanceResult r = distance_to_monotonicity(f, method, budget);
  Csv csv("distance", p.entries());
  csv.columns({"family", "n", "d", "points", "method", "distance", "distance_exact",
               "matching_size", "repair_set_size", "seed"});
  csv.row({std::string(family_name(parse_family(p.str("family")))), num(shape.n()),
           num(shape.d()), num(shape.size()), method_name, num(r.value()), r.distance.str(),
           num(r.changes), num(static_cast<std::uint64_t>(r.repair_set.size())),
           p.str("family-seed")});
  if (!p.path("edges-out").empty()) {
    const std::string& mode = p.str("mode");
    if (mode != "full" && mode != "axis") throw ConfigError("--mode must be full or axis");
    const ViolationGraph g = build_violation_graph(
        f, mode == "full" ? ViolationMode::full_comparable : ViolationMode::augmented_axis,
        budget);
    std::ostringstream edges;
    g.write_csv(edges);
    emit(edges.str(), p.path("edges-out"), out);
  }
  emit(csv.str(), p.path("out"), out);
  return kExitOk;
}

// --------------------------------------------------------------- equiv

int cmd_equiv(Params& p, std::ostream& out) {
  const GridShape shape(p.u32("n"), p.u32("d"));
  WalkSpec spec;
  spec.tau = p.u32("tau");
  const std::string& dir = p.str("direction");
  if (dir != "up" && dir != "down") throw ConfigError("--direction must be up or down");
  spec.direction = dir == "up" ? Direction::up : Direction::down;
  const std::uint64_t budget = p.u64("budget");
  std::uint64_t samples = p.u64("samples");
  bool fallback = false;
  std::vector<EquivalenceRow> rows;
  if (samples == 0) {
    try {
      rows = compare_exact(shape, spec, kEquivTolerance, budget);
    } catch (const ResourceError&) {
      fallback = true;
      samples = p.u64("fallback-samples");
    }
  }
  if (samples != 0) {
    rows = compare_statistical(shape, spec, samples, p.u64("seed"), kEquivAlpha, budget);
  }
  Csv csv("equiv", p.entries());
  csv.columns({"n", "d", "tau", "direction", "mode", "comparison", "max_abs_diff",
               "statistic", "dof", "bins", "p_value", "samples", "pass", "fallback", "seed"});
  bool all = true;
  for (const EquivalenceRow& r : rows) {
    all = all && r.pass;
    csv.row({num(shape.n()), num(shape.d()), num(spec.tau), dir,
             r.exact ? "exact" : "statistical", r.comparison,
             r.exact ? num(r.max_abs_diff) : "", r.exact ? "" : num(r.chi.statistic),
             r.exact ? "" : num(r.chi.dof), r.exact ? "" : num(r.chi.bins),
             r.exact ? "" : num(r.chi.p_value), num(r.samples), boolean(r.pass),
             boolean(fallback), p.str("seed")});
  }
  emit(csv.str(), p.path("out"), out);
  return all ? kExitOk : kExitPartial;
}

// ------------------------------------------------------- reversibility

std::string bits(std::uint64_t mask, std::uint32_t d) {
  std::string s(d, '0');
  for (std::uint32_t i = 0; i < d; ++i) {
    if (mask >> i & 1U) s[i] = '1';
  }
  return s;
}

int cmd_reversibility(Params& p, std::ostream& out) {
  if (p.u32("n") != 2) throw ConfigError("reversibility runs on the cube: --n must be 2");
  const std::uint32_t d = p.u32("d");
  if (d < 2 || d > 64) throw ConfigError("reversibility needs 2 <= d <= 64");
  const std::uint32_t ell = p.u32("ell");
  const double eps = p.real("eps");
  const double c = p.real("c");
  if (ell > d) throw ConfigError("--ell must not exceed d");
  const double cap = reversibility_length_cap(d, eps);
  if (ell > cap && !p.on("allow-beyond-cap")) {
    throw ConfigError("--ell " + std::to_string(ell) + " exceeds the length cap " +
                      format_double(cap) + " (pass --allow-beyond-cap to override)");
  }
  const std::uint64_t pairs = p.u64("pairs");
  const std::uint64_t seed = p.u64("seed");
  const double band = std::pow(std::log(static_cast<double>(d)), -3.0);
  Csv csv("reversibility", p.entries());
  csv.columns({"pair", "d", "ell", "x", "x_prime", "weight", "t", "p_forward", "p_backward",
               "ratio", "product", "band", "within_band", "cap", "seed"});
  constexpr int kAttempts = 1000;
  for (std::uint64_t k = 0; k < pairs; ++k) {
    Rng rng = Rng::stream(seed, k, kPairTag);
    std::uint64_t x = 0;
    std::uint64_t xp = 0;
    std::uint32_t w = 0;
    std::uint32_t t = 0;
    int attempt = 0;
    for (; attempt < kAttempts; ++attempt) {
      x = 0;
      for (std::uint32_t i = 0; i < d; ++i) x |= rng.below(2) << i;
      w = static_cast<std::uint32_t>(std::popcount(x));
      t = static_cast<std::uint32_t>(rng.below(std::min(ell, d - w) + 1));
      std::vector<std::uint32_t> zeros;
      for (std::uint32_t i = 0; i < d; ++i) {
        if (!(x >> i & 1U)) zeros.push_back(i);
      }
      xp = x;
      for (std::uint32_t j = 0; j < t; ++j) {
        const auto pick = j + rng.below(zeros.size() - j);
        std::swap(zeros[j], zeros[pick]);
        xp |= std::uint64_t{1} << zeros[j];
      }
      if (weight_in_middle_layers(w, d, c, eps) && weight_in_middle_layers(w + t, d, c, eps)) {
        break;
      }
    }
    if (attempt == kAttempts) throw ConfigError("middle layers too thin to sample pairs");
    // For x = x' both sides are the same pdf, taken in the up direction.
    const double forward = cube_walk_closed_form(d, w, t, ell, Direction::up);
    const double backward =
        t == 0 ? forward : cube_walk_closed_form(d, w, t, ell, Direction::down);
    const double ratio = forward / backward;
    csv.row({num(k), num(d), num(ell), bits(x, d), bits(xp, d), num(w), num(t), num(forward),
             num(backward), num(ratio),
             t == 0 ? "" : num(reversibility_product(d, w, t, ell)), num(band),
             boolean(std::abs(ratio - 1.0) <= band), num(cap), p.str("seed")});
  }
  emit(csv.str(), p.path("out"), out);
  return kExitOk;
}

// --------------------------------------------------------------- sweep

int cmd_sweep(Params& p, std::ostream& out) {
  struct Cell {
    std::string family;
    std::uint32_t n, d;
    std::string eps;
  };
  std::vector<Cell> cells;
  const auto families = split_list(p.str("family"));
  const auto ns = u32_list("n", p.str("n"));
  const auto ds = u32_list("d", p.str("d"));
  const auto epss = split_list(p.str("eps"));
  for (const auto& fam : families) {
    for (std::uint32_t n : ns) {
      for (std::uint32_t d : ds) {
        for (const auto& e : epss) cells.push_back({fam, n, d, e});
      }
    }
  }
  if (cells.empty()) throw ConfigError("sweep has no cells");
  if (p.str("family-seed").empty()) p.set("family-seed", p.str("seed"));
  const std::uint64_t seed = p.u64("seed");
  const std::uint64_t trials = p.u64("trials");
  const auto schedule = u32_list("tau", p.str("tau"));

  Csv csv("sweep", p.entries());
  csv.columns({"cell", "family", "n", "d", "eps", "trials", "rejections", "reject_rate",
               "ci_low", "ci_high", "ci_half_width", "queries", "status", "seed"});
  bool failed = false;
  std::vector<double> fit_d;
  std::vector<double> fit_rate;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const std::uint64_t cell_seed = Rng::stream(seed, i, kSweepTag)();
    try {
      const GridShape shape(cell.n, cell.d);
      FamilySpec spec;
      spec.family = parse_family(cell.family);
      spec.coord = p.u32("coord");
      spec.threshold = p.i64("threshold");
      spec.seed = p.u64("family-seed");
      spec.generators = p.u32("generators");
      const FunctionOracle f = make_family(spec, shape);
      TesterConfig cfg;
      cfg.epsilon = parse_real("eps", cell.eps);
      cfg.trials = trials != 0 ? trials : default_trials(cfg.epsilon, cell.d);
      cfg.seed = cell_seed;
      cfg.tau_schedule = schedule;
      const TesterReport r = run_tester(f, cfg);
      csv.row({num(static_cast<std::uint64_t>(i)), cell.family, num(cell.n), num(cell.d),
               cell.eps, num(r.trials), num(r.rejections), num(r.reject_rate),
               num(r.wilson_95.low), num(r.wilson_95.high), num(r.wilson_95.half_width()),
               num(r.total_queries), "ok", num(cell_seed)});
      if (r.reject_rate > 0.0) {
        fit_d.push_back(cell.d);
        fit_rate.push_back(r.reject_rate);
      }
    } catch (const std::exception& e) {
      failed = true;
      csv.row({num(static_cast<std::uint64_t>(i)), cell.family, num(cell.n), num(cell.d),
               cell.eps, "", "", "", "", "", "", "", "failed", num(cell_seed)});
    }
  }
  if (p.on("fit") && fit_d.size() >= 2) {
    const LineFit fit = loglog_fit(fit_d, fit_rate);
    csv.comment("loglog_slope=" + num(fit.slope) + " intercept=" + num(fit.intercept));
  }
  emit(csv.str(), p.path("out"), out);
  return failed ? kExitPartial : kExitOk;
}

// ------------------------------------------------------- domain-reduce

int cmd_domain_reduce(Params& p, std::ostream& out) {
  const GridShape shape(p.u32("n"), p.u32("d"));
  const FunctionOracle f = family_from(p, shape);
  const std::uint32_t k = p.u32("k");
  const std::uint64_t reps = p.u64("reps");
  const std::uint64_t seed = p.u64("seed");
  const std::uint64_t budget = p.u64("budget");
  const bool identity = p.on("identity");
  if (k == 0 || reps == 0) throw ConfigError("--k and --reps must be positive");
  if (identity && k != shape.n()) throw ConfigError("--identity needs --k equal to n");
  const Rational eps = distance_to_monotonicity(f, DistanceMethod::covering_flow, budget).distance;
  const Rational quarter = eps / 4;

  std::vector<Rational> dist(reps);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(reps);
  const int saved_levels = omp_get_max_active_levels();
  omp_set_max_active_levels(1);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r), kReduceTag);
      const Subgrid axes = identity ? identity_subgrid(shape) : sample_subgrid(shape, k, rng);
      const FunctionOracle g = restrict_to_subgrid(f, axes);
      dist[static_cast<std::size_t>(r)] =
          distance_to_monotonicity(g, DistanceMethod::covering_flow, budget).distance;
    } catch (...) {
#pragma omp critical(hgmono_reduce_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  omp_set_max_active_levels(saved_levels);
  if (failure) std::rethrow_exception(failure);

  KahanSum sum;
  std::uint64_t hits = 0;
  for (const Rational& v : dist) {
    sum += v.convert_to<double>();
    hits += v >= quarter;
  }
  const double n = static_cast<double>(reps);
  const double mean = sum.value() / n;
  KahanSum sq;
  for (const Rational& v : dist) {
    const double e = v.convert_to<double>() - mean;
    sq += e * e;
  }
  const double sd = reps > 1 ? std::sqrt(sq.value() / (n - 1.0)) : 0.0;
  const double half = kZ95 * sd / std::sqrt(n);
  const Interval frac = wilson_interval(hits, reps, kZ95);
  const double e = eps.convert_to<double>();

  const ConfigEntries config = p.entries();
  Csv csv("domain-reduce", config);
  csv.columns({"family", "n", "d", "k", "subgrids", "epsilon", "epsilon_exact", "mean",
               "ci_low", "ci_high", "frac_quarter", "frac_ci_low", "frac_ci_high",
               "half_eps_met", "quarter_met", "seed"});
  csv.row({std::string(family_name(parse_family(p.str("family")))), num(shape.n()),
           num(shape.d()), num(k), num(reps), num(e), eps.str(), num(mean), num(mean - half),
           num(mean + half), num(static_cast<double>(hits) / n), num(frac.low),
           num(frac.high), boolean(mean + half >= e / 2.0), boolean(frac.high >= e / 4.0),
           p.str("seed")});
  if (!p.path("rows-out").empty()) {
    Csv rows("domain-reduce", config);
    rows.columns({"subgrid", "distance", "distance_exact"});
    for (std::size_t r = 0; r < dist.size(); ++r) {
      rows.row({num(static_cast<std::uint64_t>(r)), num(dist[r].convert_to<double>()),
                dist[r].str()});
    }
    emit(rows.str(), p.path("rows-out"), out);
  }
  emit(csv.str(), p.path("out"), out);
  return kExitOk;
}

// -------------------------------------------------------------- driver

std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::vector<std::string> args;
  for (const auto& [k, v] : parse_config(in)) args.push_back("--" + k + "=" + v);
  return args;
}

// Splices config-file entries in front of the command line flags so that
// explicit flags, parsed later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      const auto extra = config_arguments(args[++i]);
      injected.insert(injected.end(), extra.begin(), extra.end());
    } else if (args[i].rfind("--config=", 0) == 0) {
      const auto extra = config_arguments(args[i].substr(9));
      injected.insert(injected.end(), extra.begin(), extra.end());
    } else {
      rest.push_back(args[i]);
    }
  }
  if (injected.empty()) return rest;
  auto sub = std::find_if(rest.begin(), rest.end(),
                          [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (sub == rest.end()) throw CLI::RequiredError("a subcommand");
  rest.insert(sub + 1, injected.begin(), injected.end());
  return rest;
}

int cmd_replay(const std::string& in_path, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  std::ifstream in(in_path);
  if (!in) throw ConfigError("cannot read " + in_path);
  const ConfigEntries header = read_csv_header(in);
  if (header.empty() || header.front().first != "command") {
    throw ConfigError(in_path + " has no provenance header");
  }
  std::vector<std::string> args{header.front().second};
  for (std::size_t i = 1; i < header.size(); ++i) {
    args.push_back("--" + header[i].first + "=" + header[i].second);
  }
  if (!out_path.empty()) args.push_back("--out=" + out_path);
  return run_cli(args, out, err);
}

}  // namespace

ConfigEntries parse_config(std::istream& in) {
  ConfigEntries out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("config line " + std::to_string(number) + " is not key=value");
    }
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

ConfigEntries read_csv_header(std::istream& in) {
  ConfigEntries out;
  std::string line;
  const std::string prefix = kHeaderPrefix;
  while (std::getline(in, line) && line.rfind(prefix, 0) == 0) {
    const std::string body = line.substr(prefix.size());
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw FormatError("malformed header line: " + line);
    out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergrid monotonicity tester and exact oracles", "hgmono"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "Help for every command");
  app.footer(
      "Every subcommand also takes --config FILE: key=value lines, '#' comments.\n"
      "Flags given on the command line override the file. HGM_THREADS sets the\n"
      "worker count; output does not depend on it.");

  std::map<std::string, std::unique_ptr<Command>> commands;
  auto make = [&](const std::string& name, const std::string& help, auto run) {
    auto c = std::make_unique<Command>();
    c->app = app.add_subcommand(name, help);
    c->run = run;
    Command* raw = c.get();
    commands.emplace(name, std::move(c));
    return raw;
  };

  {
    Command* c = make("test", "Run the tester and report rejection rates", cmd_test);
    Params& p = c->params;
    add_shape(*c->app, p);
    add_family(*c->app, p);
    add_common(*c->app, p);
    p.option(*c->app, "eps", "0.5", "Distance parameter epsilon");
    p.option(*c->app, "trials", "0", "Trials; 0 selects ceil(32 sqrt(d) / eps^2)");
    p.option(*c->app, "tau", "", "Comma-separated walk lengths (powers of two)");
    p.option(*c->app, "k", "0", "Subgrid side for --full; 0 selects the default");
    p.option(*c->app, "reps", "0", "Subgrid draws for --full; 0 selects ceil(8/eps)");
    p.flag(*c->app, "full", "Run the complete tester with domain reduction");
    p.flag(*c->app, "single-shot", "Exit with status 2 when a violation is found");
    p.flag(*c->app, "serial", "Use the serial reference kernel");
  }
  {
    Command* c = make("distance", "Exact distance to monotonicity", cmd_distance);
    Params& p = c->params;
    add_shape(*c->app, p);
    add_family(*c->app, p);
    add_common(*c->app, p);
    p.option(*c->app, "method", "flow", "flow or matching");
    p.option(*c->app, "mode", "full", "Violation graph for --edges-out: full or axis");
    p.path(*c->app, "edges-out", "Write the violation graph edge list here");
  }
  {
    Command* c = make("equiv", "Compare the three walk formulations", cmd_equiv);
    Params& p = c->params;
    add_shape(*c->app, p);
    add_common(*c->app, p);
    p.option(*c->app, "tau", "1", "Walk length");
    p.option(*c->app, "direction", "up", "up or down");
    p.option(*c->app, "samples", "0", "Samples per formulation; 0 compares exact pmfs");
    p.option(*c->app, "fallback-samples", "1000000",
             "Samples used when the exact comparison is over budget");
  }
  {
    Command* c = make("reversibility", "Closed-form cube walk reversibility ratios",
                      cmd_reversibility);
    Params& p = c->params;
    add_shape(*c->app, p, false);
    add_common(*c->app, p);
    p.option(*c->app, "ell", "", "Walk length")->required();
    p.option(*c->app, "eps", "0.5", "Distance parameter epsilon");
    p.option(*c->app, "c", std::to_string(static_cast<int>(kRestrictedLayerC)),
             "Middle-layer constant");
    p.option(*c->app, "pairs", "100", "Number of sampled pairs");
    p.flag(*c->app, "allow-beyond-cap", "Permit walk lengths above the length cap");
  }
  {
    Command* c = make("sweep", "Rejection rates over a grid of cells", cmd_sweep);
    Params& p = c->params;
    p.option(*c->app, "family", "", "Comma-separated families")->required();
    p.option(*c->app, "n", "", "Comma-separated side lengths")->required();
    p.option(*c->app, "d", "", "Comma-separated dimensions")->required();
    p.option(*c->app, "eps", "0.5", "Comma-separated epsilons");
    p.option(*c->app, "coord", "1", "Dictator coordinate (1-based)");
    p.option(*c->app, "threshold", "-1", "Dictator or majority threshold");
    p.option(*c->app, "family-seed", "", "Seed for random families; defaults to --seed");
    p.option(*c->app, "generators", "0", "Generator count for random_monotone");
    p.option(*c->app, "trials", "0", "Trials per cell; 0 selects the default");
    p.option(*c->app, "tau", "", "Comma-separated walk lengths");
    add_common(*c->app, p);
    p.flag(*c->app, "fit", "Append a log-log fit of rate against d");
  }
  {
    Command* c = make("domain-reduce", "Distances of functions restricted to subgrids",
                      cmd_domain_reduce);
    Params& p = c->params;
    add_shape(*c->app, p);
    add_family(*c->app, p);
    add_common(*c->app, p);
    p.option(*c->app, "k", "", "Subgrid side")->required();
    p.option(*c->app, "reps", "200", "Number of subgrids");
    p.flag(*c->app, "identity", "Use the full grid in order (requires k = n)");
    p.path(*c->app, "rows-out", "Write per-subgrid distances here");
  }
  std::string replay_in;
  std::string replay_out;
  CLI::App* replay = app.add_subcommand("replay", "Regenerate a CSV from its header");
  replay->add_option("--in", replay_in, "CSV written by hgmono")->required();
  replay->add_option("--out", replay_out, "Output path; stdout when omitted");

  try {
    std::vector<std::string> argv = expand_config(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (replay->parsed()) return cmd_replay(replay_in, replay_out, out, err);
    for (auto& [name, c] : commands) {
      if (c->app->parsed()) return c->run(c->params, out);
    }
  } catch (const ResourceError& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ConfigError& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hgmono: " << e.what() << '\n';
    return kExitPartial;
  }
  return kExitUsage;
}

}  // namespace hgmono
