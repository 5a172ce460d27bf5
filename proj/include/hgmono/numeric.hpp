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

#ifndef HGMONO_NUMERIC_HPP_
#define HGMONO_NUMERIC_HPP_

#include <cstdint>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hgmono {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Compensated summation.
class KahanSum {
 public:
  void add(double v) {
    const double y = v - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  KahanSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double kahan_total(std::span<const double> values);

// C(n, k) as a double; 0 when k > n.
double binomial(std::uint64_t n, std::uint64_t k);
// C(n, k) exactly; 0 when k > n.
BigInt binomial_exact(std::uint64_t n, std::uint64_t k);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);

}  // namespace hgmono

#endif  // HGMONO_NUMERIC_HPP_
