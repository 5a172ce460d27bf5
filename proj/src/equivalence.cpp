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

#include "hgmono/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "hgmono/errors.hpp"
#include "hgmono/parallel.hpp"

namespace hgmono {
namespace {

constexpr Formulation kForms[] = {Formulation::direct, Formulation::cube_first,
                                  Formulation::cube_at_x};

std::uint64_t pair_space(const GridShape& shape, std::uint64_t budget) {
  const double size = static_cast<double>(shape.size());
  if (size * size > static_cast<double>(budget)) {
    throw ResourceError("pair space of " + shape.to_string() + " exceeds budget");
  }
  return shape.size() * shape.size();
}

std::string label(Formulation a, Formulation b) {
  return std::string(to_string(a)) + ":" + to_string(b);
}

}  // namespace

std::vector<EquivalenceRow> compare_exact(const GridShape& shape, const WalkSpec& spec,
                                          double tolerance, std::uint64_t budget) {
  std::vector<std::vector<double>> joint;
  for (Formulation form : kForms) joint.push_back(exact_joint_pmf(shape, spec, form, budget));
  std::vector<EquivalenceRow> rows;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      EquivalenceRow row;
      row.comparison = label(kForms[a], kForms[b]);
      for (std::size_t i = 0; i < joint[a].size(); ++i) {
        row.max_abs_diff = std::max(row.max_abs_diff, std::abs(joint[a][i] - joint[b][i]));
      }
      row.pass = row.max_abs_diff <= tolerance;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

PairSampler formulation_sampler(const GridShape& shape, const WalkSpec& spec,
                                Formulation form) {
  return [shape, spec, form](Rng& rng) {
    return sample_walk_pair(shape, spec.tau, spec.direction, form, rng);
  };
}

std::vector<std::uint64_t> pair_histogram(const GridShape& shape, const PairSampler& sampler,
                                          std::uint64_t samples, std::uint64_t seed,
                                          std::uint64_t tag, std::uint64_t budget) {
  const std::uint64_t cells = pair_space(shape, budget);
  const std::uint64_t size = shape.size();
  std::vector<std::uint64_t> total(cells);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(worker_count())
  {
    std::vector<std::uint64_t> local(cells);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < count; ++s) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s), tag);
      const auto [x, y] = sampler(rng);
      ++local[index_of(shape, x) * size + index_of(shape, y)];
    }
#pragma omp critical(hgmono_histogram_merge)
    for (std::uint64_t i = 0; i < cells; ++i) total[i] += local[i];
  }
  return total;
}

EquivalenceRow fit_sampler(const GridShape& shape, const WalkSpec& spec,
                           const PairSampler& sampler, const std::string& name,
                           std::uint64_t samples, std::uint64_t seed, double alpha,
                           std::uint64_t budget) {
  pair_space(shape, budget);
  const std::vector<double> reference =
      exact_joint_pmf(shape, spec, Formulation::direct, budget);
  const std::vector<std::uint64_t> counts =
      pair_histogram(shape, sampler, samples, seed, 0xe9, budget);
  EquivalenceRow row;
  row.comparison = name + ":exact";
  row.exact = false;
  row.samples = samples;
  row.chi = chi_square_gof(counts, reference);
  row.pass = row.chi.p_value > alpha;
  return row;
}

std::vector<EquivalenceRow> compare_statistical(const GridShape& shape, const WalkSpec& spec,
                                                std::uint64_t samples, std::uint64_t seed,
                                                double alpha, std::uint64_t budget) {
  if (samples == 0) throw DomainError("statistical comparison needs samples >= 1");
  std::vector<EquivalenceRow> rows;
  bool reference = true;
  try {
    exact_joint_pmf(shape, spec, Formulation::direct, budget);
  } catch (const ResourceError&) {
    reference = false;
  }
  if (reference) {
    for (Formulation form : kForms) {
      rows.push_back(fit_sampler(shape, spec, formulation_sampler(shape, spec, form),
                                 to_string(form), samples, seed, alpha, budget));
    }
    return rows;
  }
  std::vector<std::vector<std::uint64_t>> counts;
  for (std::size_t k = 0; k < 3; ++k) {
    counts.push_back(pair_histogram(shape, formulation_sampler(shape, spec, kForms[k]),
                                    samples, seed, 0xe9 + k, budget));
  }
  for (std::size_t k = 1; k < 3; ++k) {
    EquivalenceRow row;
    row.comparison = label(Formulation::direct, kForms[k]);
    row.exact = false;
    row.samples = samples;
    row.chi = chi_square_homogeneity(counts[0], counts[k]);
    row.pass = row.chi.p_value > alpha;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hgmono
