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

#ifndef HGMONO_ERRORS_HPP_
#define HGMONO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hgmono {

// Invalid point, shape, or argument for a mathematical operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed truth-table file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact computation would exceed its enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown family name or inconsistent experiment parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hgmono

#endif  // HGMONO_ERRORS_HPP_
