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

#include "hgmono/rng.hpp"

namespace hgmono {

Rng::Rng(std::uint64_t seed) {
  std::uint64_t z = seed;
  for (auto& word : s_) {
    z += 0x9e3779b97f4a7c15ULL;
    word = mix64(z);
  }
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t id, std::uint64_t tag) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (id * 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (tag * 0x8cb92ba72f3d8dd7ULL));
  return Rng(h);
}

// Lemire's nearly-divisionless bounded integer.
std::uint64_t Rng::below(std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace hgmono
