// Copyright 2026 The TrackCut Authors.
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

#include <cstdlib>
#include <string>

#include "trackcut/kernels.h"

namespace trackcut::kernels {

namespace detail {
#if defined(TRACKCUT_HAVE_AVX2)
const KernelTable& Avx2TableUnchecked();
#endif
#if defined(TRACKCUT_HAVE_NEON)
const KernelTable& NeonTableUnchecked();
#endif
}  // namespace detail

const KernelTable* Avx2Kernels() {
#if defined(TRACKCUT_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &detail::Avx2TableUnchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* NeonKernels() {
#if defined(TRACKCUT_HAVE_NEON)
  return &detail::NeonTableUnchecked();
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> AvailableKernels() {
  std::vector<const KernelTable*> out{&ScalarKernels()};
  if (const KernelTable* t = Avx2Kernels()) out.push_back(t);
  if (const KernelTable* t = NeonKernels()) out.push_back(t);
  return out;
}

namespace detail {

const KernelTable* SelectByName(std::string_view name) {
  if (name == "scalar") return &ScalarKernels();
  if (name == "avx2") return Avx2Kernels();
  if (name == "neon") return NeonKernels();
  if (name.empty() || name == "auto") {
    if (const KernelTable* t = Avx2Kernels()) return t;
    if (const KernelTable* t = NeonKernels()) return t;
    return &ScalarKernels();
  }
  return nullptr;
}

}  // namespace detail

const KernelTable& Active() {
  static const KernelTable* table = [] {
    const char* env = std::getenv("TRACKCUT_SIMD");
    const std::string_view name = env ? env : "auto";
    const KernelTable* t = detail::SelectByName(name);
    // An unknown or unsupported request falls back to the scalar reference.
    return t ? t : &ScalarKernels();
  }();
  return *table;
}

}  // namespace trackcut::kernels
