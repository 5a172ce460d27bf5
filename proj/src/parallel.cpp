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

#include "hgmono/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace hgmono {
namespace {

std::atomic<int> g_override{0};

int env_workers() {
  const char* env = std::getenv("HGM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int v = std::stoi(env);
    return v > 0 ? v : 0;
  } catch (...) {
    return 0;
  }
}

}  // namespace

int worker_count() {
  if (int o = g_override.load(); o > 0) return o;
  if (int e = env_workers(); e > 0) return e;
  return omp_get_max_threads();
}

void set_worker_count(int workers) { g_override.store(workers > 0 ? workers : 0); }

}  // namespace hgmono
