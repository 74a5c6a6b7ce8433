// Copyright 2026 the sinkscale authors
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

// Runtime kernel selection. This translation unit is built without SIMD
// flags; the AVX2 entry points are only dereferenced after the CPUID check.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "sinkscale/kernels.hpp"

namespace sinkscale {
namespace kernels {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_supports_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#endif

namespace {

const Ops* best_available() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_supports_avx2()) return &avx2_ops();
#endif
  return &scalar_ops();
}

const Ops* resolve(const char* name) {
  if (name == nullptr) return nullptr;
  if (std::strcmp(name, "auto") == 0) return best_available();
  if (std::strcmp(name, "scalar") == 0) return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
  if (std::strcmp(name, "avx2") == 0 && cpu_supports_avx2()) {
    return &avx2_ops();
  }
#endif
  return nullptr;
}

std::atomic<const Ops*>& selection() {
  static std::atomic<const Ops*> sel = [] {
    const Ops* from_env = resolve(std::getenv("SINKSCALE_KERNEL"));
    return from_env != nullptr ? from_env : best_available();
  }();
  return sel;
}

}  // namespace

const Ops& active() { return *selection().load(std::memory_order_relaxed); }

bool select(const char* name) {
  const Ops* ops = resolve(name);
  if (ops == nullptr) return false;
  selection().store(ops, std::memory_order_relaxed);
  return true;
}

}  // namespace kernels
}  // namespace sinkscale
