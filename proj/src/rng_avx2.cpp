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

#if defined(__x86_64__)

#include <immintrin.h>

namespace csense {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// 32x32 -> (hi, lo) for all eight 32-bit lanes: even lanes via mul_epu32
// directly, odd lanes via the 32-bit-shifted copy, then re-interleave.
inline void mulhilo8(__m256i x, std::uint32_t mul, __m256i& hi, __m256i& lo) {
  const __m256i m = _mm256_set1_epi32(static_cast<int>(mul));
  const __m256i even = _mm256_mul_epu32(x, m);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
  lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
  hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

}  // namespace

void philox4x32_fill_avx2(PhiloxCounter base, PhiloxKey key,
                          std::uint32_t blocks, std::uint32_t* out) {
  std::uint32_t b = 0;
  alignas(32) std::uint32_t lanes[4][8];
  for (; b + 8 <= blocks; b += 8) {
    __m256i c0 = _mm256_add_epi32(
        _mm256_set1_epi32(static_cast<int>(base.c0 + b)),
        _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    __m256i c1 = _mm256_set1_epi32(static_cast<int>(base.c1));
    __m256i c2 = _mm256_set1_epi32(static_cast<int>(base.c2));
    __m256i c3 = _mm256_set1_epi32(static_cast<int>(base.c3));
    std::uint32_t k0 = key.k0, k1 = key.k1;
    for (int r = 0; r < 10; ++r) {
      __m256i hi0, lo0, hi1, lo1;
      mulhilo8(c0, kMul0, hi0, lo0);
      mulhilo8(c2, kMul1, hi1, lo1);
      const __m256i vk0 = _mm256_set1_epi32(static_cast<int>(k0));
      const __m256i vk1 = _mm256_set1_epi32(static_cast<int>(k1));
      c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), vk0);
      c1 = lo1;
      c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), vk1);
      c3 = lo0;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes[0]), c0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes[1]), c1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes[2]), c2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes[3]), c3);
    for (int lane = 0; lane < 8; ++lane) {
      out[4 * (b + lane) + 0] = lanes[0][lane];
      out[4 * (b + lane) + 1] = lanes[1][lane];
      out[4 * (b + lane) + 2] = lanes[2][lane];
      out[4 * (b + lane) + 3] = lanes[3][lane];
    }
  }
  if (b < blocks) {
    PhiloxCounter tail = base;
    tail.c0 = base.c0 + b;
    philox4x32_fill_scalar(tail, key, blocks - b, out + 4 * b);
  }
}

}  // namespace csense

#endif  // __x86_64__
