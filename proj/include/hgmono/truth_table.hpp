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

#ifndef HGMONO_TRUTH_TABLE_HPP_
#define HGMONO_TRUTH_TABLE_HPP_

#include <filesystem>
#include <iosfwd>

#include "hgmono/oracle.hpp"

namespace hgmono {

// Truth-table file layout:
//   "HGF1" | n : u32 LE | d : u32 LE | ceil(n^d / 8) bytes
// Bit i of byte b holds the value at point index 8b + i. Padding bits in the
// final byte are written as zero and ignored on load.

void save_truth_table(const ExplicitFunction& f, std::ostream& out);
void save_truth_table(const ExplicitFunction& f, const std::filesystem::path& path);

// Throws FormatError on bad magic, a truncated body, or trailing bytes.
ExplicitFunction load_truth_table(std::istream& in);
ExplicitFunction load_truth_table(const std::filesystem::path& path);

}  // namespace hgmono

#endif  // HGMONO_TRUTH_TABLE_HPP_
