// Copyright 2026 The csense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csense/rng.hpp"

namespace csense {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2,
                       std::uint32_t& c3, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c0 = hi1 ^ c1 ^ k0;
  c1 = lo1;
  c2 = hi0 ^ c3 ^ k1;
  c3 = lo0;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  std::uint32_t c0 = ctr.c0, c1 = ctr.c1, c2 = ctr.c2, c3 = ctr.c3;
  std::uint32_t k0 = key.k0, k1 = key.k1;
  for (int r = 0; r < 10; ++r) {
    round_once(c0, c1, c2, c3, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return {c0, c1, c2, c3};
}

void philox4x32_fill_scalar(PhiloxCounter base, PhiloxKey key,
                            std::uint32_t blocks, std::uint32_t* out) {
  for (std::uint32_t b = 0; b < blocks; ++b) {
    PhiloxCounter ctr = base;
    ctr.c0 = base.c0 + b;
    const auto block = philox4x32(ctr, key);
    out[4 * b + 0] = block[0];
    out[4 * b + 1] = block[1];
    out[4 * b + 2] = block[2];
    out[4 * b + 3] = block[3];
  }
}

}  // namespace csense
