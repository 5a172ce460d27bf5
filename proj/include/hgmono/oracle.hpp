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

#ifndef HGMONO_ORACLE_HPP_
#define HGMONO_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hgmono/grid.hpp"

namespace hgmono {

class ExplicitFunction;

// Query access to f : [n]^d -> {0,1}.
//
// A FunctionOracle is a cheap handle; copies share the evaluator and the
// query counter. Evaluation must be pure and safe to call concurrently.
// Hot loops should evaluate through a Querier, which counts locally and adds
// its tally to the shared counter when it is flushed or destroyed, so the
// total is exact without per-query atomics.
class FunctionOracle {
 public:
  using Eval = std::function<bool(std::span<const Coord>)>;

  FunctionOracle(GridShape shape, Eval eval, std::string name = "f");

  const GridShape& shape() const { return state_->shape; }
  const std::string& name() const { return state_->name; }

  // Counted evaluation.
  bool eval(std::span<const Coord> x) const {
    state_->queries.fetch_add(1, std::memory_order_relaxed);
    return state_->eval(x);
  }

  std::uint64_t query_count() const {
    return state_->queries.load(std::memory_order_relaxed);
  }
  void reset_query_count() const { state_->queries.store(0); }

  // The backing table when this oracle wraps an ExplicitFunction.
  const ExplicitFunction* table() const { return state_->table.get(); }

 private:
  friend class Querier;
  friend class ExplicitFunction;

  struct State {
    State(GridShape s, Eval e, std::string n)
        : shape(std::move(s)), eval(std::move(e)), name(std::move(n)) {}
    GridShape shape;
    Eval eval;
    std::string name;
    std::atomic<std::uint64_t> queries{0};
    std::shared_ptr<const ExplicitFunction> table;
  };
  std::shared_ptr<State> state_;
};

// Per-worker counted view of an oracle.
class Querier {
 public:
  explicit Querier(const FunctionOracle& f) : state_(f.state_) {}
  ~Querier() { flush(); }
  Querier(const Querier&) = delete;
  Querier& operator=(const Querier&) = delete;

  bool operator()(std::span<const Coord> x) {
    ++local_;
    ++lifetime_;
    return state_->eval(x);
  }

  const GridShape& shape() const { return state_->shape; }
  // Queries made through this view since construction.
  std::uint64_t count() const { return lifetime_; }

  void flush() {
    if (local_ != 0) {
      state_->queries.fetch_add(local_, std::memory_order_relaxed);
      local_ = 0;
    }
  }

 private:
  std::shared_ptr<FunctionOracle::State> state_;
  std::uint64_t local_ = 0;
  std::uint64_t lifetime_ = 0;
};

// Bit-packed truth table. Bit i of the packed array is the value at point
// index i (coordinate 1 least significant).
class ExplicitFunction {
 public:
  // Largest table the library will allocate, in points.
  static constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 34;

  // All-zero table; throws ResourceError when n^d exceeds kMaxPoints.
  explicit ExplicitFunction(GridShape shape);

  // Evaluates f at every point (parallel over points). If f is already
  // backed by a table, that table is copied and no queries are made.
  static ExplicitFunction tabulate(const FunctionOracle& f);
  // Single-threaded reference for tabulate().
  static ExplicitFunction tabulate_serial(const FunctionOracle& f);

  const GridShape& shape() const { return shape_; }
  std::uint64_t size() const { return size_; }

  bool get(PointIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(PointIndex i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  bool eval(std::span<const Coord> x) const { return get(index_of(shape_, x)); }

  std::uint64_t count_ones() const;
  std::span<const std::uint64_t> words() const { return words_; }

  // Oracle view over a shared copy of this table.
  FunctionOracle as_oracle(std::string name = "explicit") const;

  friend bool operator==(const ExplicitFunction& a, const ExplicitFunction& b) {
    return a.shape_ == b.shape_ && a.words_ == b.words_;
  }

 private:
  GridShape shape_;
  std::uint64_t size_;
  std::vector<std::uint64_t> words_;
};

}  // namespace hgmono

#endif  // HGMONO_ORACLE_HPP_
