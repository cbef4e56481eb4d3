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

#ifndef CSENSE_RNG_HPP_
#define CSENSE_RNG_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace csense {

// Counter-based generator (Philox4x32, 10 rounds). Outputs are a pure
// function of (key, counter), so trials, steps, and threads can address
// disjoint streams without shared state, and parallel runs reproduce serial
// ones exactly.

struct PhiloxKey {
  std::uint32_t k0 = 0, k1 = 0;
};

struct PhiloxCounter {
  std::uint32_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
};

/// Scalar reference block function.
std::array<std::uint32_t, 4> philox4x32(PhiloxCounter ctr, PhiloxKey key);

/// Fills out[4 * b .. 4 * b + 3] with the block at counter {c0 + b, c1, c2,
/// c3} for b in [0, blocks). Dispatches to the best kernel available at
/// runtime (AVX2 when the CPU has it); bitwise identical to the scalar path.
void philox4x32_fill(PhiloxCounter base, PhiloxKey key, std::uint32_t blocks,
                     std::uint32_t* out);

/// Same as philox4x32_fill but pinned to the scalar reference kernel.
void philox4x32_fill_scalar(PhiloxCounter base, PhiloxKey key,
                            std::uint32_t blocks, std::uint32_t* out);

#if defined(__x86_64__)
void philox4x32_fill_avx2(PhiloxCounter base, PhiloxKey key,
                          std::uint32_t blocks, std::uint32_t* out);
#endif

/// Name of the kernel philox4x32_fill dispatches to ("avx2" or "scalar").
const std::string& rng_kernel_name();

/// Uniform double in [0, 1) from a block's (even, odd) word pair.
inline double uniform_from_words(std::uint32_t lo, std::uint32_t hi) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Per-trial random stream addressed by (seed, stream, trial, step). Each
/// step owns one block: draw 0 is the control uniform, draw 1 the
/// observation uniform. Whether a step consumes zero, one, or both draws has
/// no effect on any other step.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint32_t stream, std::uint32_t trial)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream), trial_(trial) {
    buffer_.resize(4 * kChunk);
  }

  double uniform(std::uint64_t step, int draw) {
    if (step < base_ || step >= base_ + kChunk || base_ == kUnfilled) refill(step);
    const std::uint32_t* block = buffer_.data() + 4 * (step - base_);
    return draw == 0 ? uniform_from_words(block[0], block[1])
                     : uniform_from_words(block[2], block[3]);
  }

 private:
  static constexpr std::uint64_t kChunk = 64;
  static constexpr std::uint64_t kUnfilled = ~std::uint64_t{0};

  void refill(std::uint64_t step) {
    base_ = step - (step % kChunk);
    const PhiloxCounter ctr{static_cast<std::uint32_t>(base_),
                            static_cast<std::uint32_t>(base_ >> 32) ^ stream_,
                            trial_, 0x7da3u};
    philox4x32_fill(ctr, key_, kChunk, buffer_.data());
  }

  PhiloxKey key_;
  std::uint32_t stream_, trial_;
  std::uint64_t base_ = kUnfilled;
  std::vector<std::uint32_t> buffer_;
};

/// First index y with u01 < cumulative[y]; cumulative is nondecreasing with
/// final entry 1 (zero-probability cells are never selected).
inline int sample_index(const std::vector<double>& cumulative, double u01) {
  const int n = static_cast<int>(cumulative.size());
  for (int y = 0; y < n; ++y) {
    if (u01 < cumulative[y]) return y;
  }
  return n - 1;
}

}  // namespace csense

#endif  // CSENSE_RNG_HPP_
