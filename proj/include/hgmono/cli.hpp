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

#ifndef HGMONO_CLI_HPP_
#define HGMONO_CLI_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hgmono {

enum ExitCode : int {
  kExitOk = 0,
  kExitPartial = 1,
  kExitRejected = 2,
  kExitUsage = 64,
  kExitBudget = 65,
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// One `key=value` per line; blank lines and lines starting with '#' are
// skipped. Throws ConfigError on a line without '='.
ConfigEntries parse_config(std::istream& in);

// The `#@ key=value` provenance header at the top of a CSV written by the CLI.
ConfigEntries read_csv_header(std::istream& in);

// Runs one CLI invocation. `args` excludes the program name. CSV goes to
// --out when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgmono

#endif  // HGMONO_CLI_HPP_
