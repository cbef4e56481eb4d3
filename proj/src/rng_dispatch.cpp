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

using FillFn = void (*)(PhiloxCounter, PhiloxKey, std::uint32_t, std::uint32_t*);

struct Kernel {
  FillFn fn;
  const char* name;
};

Kernel pick_kernel() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return {philox4x32_fill_avx2, "avx2"};
#endif
  return {philox4x32_fill_scalar, "scalar"};
}

const Kernel& kernel() {
  static const Kernel k = pick_kernel();
  return k;
}

}  // namespace

void philox4x32_fill(PhiloxCounter base, PhiloxKey key, std::uint32_t blocks,
                     std::uint32_t* out) {
  kernel().fn(base, key, blocks, out);
}

const std::string& rng_kernel_name() {
  static const std::string name = kernel().name;
  return name;
}

}  // namespace csense
