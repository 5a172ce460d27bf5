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

#include "hgmono/oracle.hpp"

#include <bit>

#include "hgmono/errors.hpp"
#include "hgmono/parallel.hpp"

namespace hgmono {

FunctionOracle::FunctionOracle(GridShape shape, Eval eval, std::string name)
    : state_(std::make_shared<State>(std::move(shape), std::move(eval), std::move(name))) {}

ExplicitFunction::ExplicitFunction(GridShape shape)
    : shape_(std::move(shape)), size_(0) {
  auto s = shape_.try_size();
  if (!s || *s > kMaxPoints) {
    throw ResourceError("truth table for " + shape_.to_string() +
                        " exceeds the explicit-table limit");
  }
  size_ = *s;
  words_.assign((size_ + 63) / 64, 0);
}

ExplicitFunction ExplicitFunction::tabulate(const FunctionOracle& f) {
  if (f.table() != nullptr) return *f.table();
  ExplicitFunction table(f.shape());
  const std::int64_t word_count = static_cast<std::int64_t>(table.words_.size());
  const GridShape& shape = f.shape();
  // Each worker owns whole 64-bit words, so no two threads write one word.
#pragma omp parallel num_threads(worker_count())
  {
    Querier query(f);
    Point x = Point::filled(shape.d(), 1);
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < word_count; ++w) {
      std::uint64_t word = 0;
      const PointIndex base = static_cast<PointIndex>(w) * 64;
      for (PointIndex b = 0; b < 64 && base + b < table.size_; ++b) {
        point_of(shape, base + b, x.coords());
        if (query(x)) word |= std::uint64_t{1} << b;
      }
      table.words_[static_cast<std::size_t>(w)] = word;
    }
  }
  return table;
}

ExplicitFunction ExplicitFunction::tabulate_serial(const FunctionOracle& f) {
  if (f.table() != nullptr) return *f.table();
  ExplicitFunction table(f.shape());
  Querier query(f);
  Point x = Point::filled(f.shape().d(), 1);
  for (PointIndex i = 0; i < table.size_; ++i) {
    point_of(f.shape(), i, x.coords());
    table.set(i, query(x));
  }
  return table;
}

std::uint64_t ExplicitFunction::count_ones() const {
  std::uint64_t ones = 0;
  for (std::uint64_t w : words_) ones += static_cast<std::uint64_t>(std::popcount(w));
  return ones;
}

FunctionOracle ExplicitFunction::as_oracle(std::string name) const {
  auto shared = std::make_shared<const ExplicitFunction>(*this);
  FunctionOracle oracle(
      shape_,
      [shared](std::span<const Coord> x) { return shared->eval(x); },
      std::move(name));
  oracle.state_->table = shared;
  return oracle;
}

}  // namespace hgmono
