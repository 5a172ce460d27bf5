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

#include "hgmono/truth_table.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "hgmono/errors.hpp"

namespace hgmono {
namespace {

constexpr std::array<char, 4> kMagic{'H', 'G', 'F', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v & 0xff),
                                  static_cast<char>((v >> 8) & 0xff),
                                  static_cast<char>((v >> 16) & 0xff),
                                  static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw FormatError("truth table header truncated");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void save_truth_table(const ExplicitFunction& f, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, f.shape().n());
  put_u32(out, f.shape().d());
  const std::uint64_t byte_count = (f.size() + 7) / 8;
  std::vector<char> body(byte_count);
  const auto words = f.words();
  for (std::uint64_t b = 0; b < byte_count; ++b) {
    body[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff);
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw FormatError("failed writing truth table");
}

void save_truth_table(const ExplicitFunction& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  save_truth_table(f, out);
}

ExplicitFunction load_truth_table(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("bad truth table magic (expected HGF1)");
  }
  const std::uint32_t n = get_u32(in);
  const std::uint32_t d = get_u32(in);
  if (n == 0 || d == 0) throw FormatError("truth table has zero n or d");
  GridShape shape = GridShape::general(n, d);
  if (shape.dyadic()) shape = GridShape(n, d);
  ExplicitFunction f(shape);
  const std::uint64_t byte_count = (f.size() + 7) / 8;
  std::vector<unsigned char> body(byte_count);
  if (!in.read(reinterpret_cast<char*>(body.data()),
               static_cast<std::streamsize>(byte_count))) {
    throw FormatError("truth table body truncated: expected " +
                      std::to_string(byte_count) + " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("truth table has trailing bytes");
  }
  for (PointIndex i = 0; i < f.size(); ++i) {
    f.set(i, (body[i / 8] >> (i % 8)) & 1U);
  }
  return f;
}

ExplicitFunction load_truth_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return load_truth_table(in);
}

}  // namespace hgmono
