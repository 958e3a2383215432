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

#ifndef TRACKCUT_KERNELS_H_
#define TRACKCUT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace trackcut::kernels {

// Inner loops shared by pooling, scoring, regeneration and selection.
// Every entry has a scalar reference implementation; SIMD variants must
// agree with it exactly for elementwise kernels and to rounding for the
// reductions (Sum, Dot, SumSquaredDiff).
struct KernelTable {
  const char* name;

  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*sum_squared_diff)(const double* a, const double* b, std::size_t n);
  // x[i] += c
  void (*add_constant)(double* x, std::size_t n, double c);
  // x[i] /= d
  void (*divide)(double* x, std::size_t n, double d);
  // out[i] = x[i] >= level ? 1 : 0; returns the number of set entries.
  std::size_t (*threshold_ge)(const double* x, std::size_t n, double level,
                              std::uint8_t* out);
};

const KernelTable& ScalarKernels();
// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// All variants usable on this machine, scalar first.
std::vector<const KernelTable*> AvailableKernels();

// Chosen once on first use: TRACKCUT_SIMD=scalar|avx2|neon|auto (default
// auto picks the widest supported variant).
const KernelTable& Active();

// Span conveniences over Active().
inline double Sum(std::span<const double> x) {
  return Active().sum(x.data(), x.size());
}
inline double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}
inline double SumSquaredDiff(std::span<const double> a,
                             std::span<const double> b) {
  return Active().sum_squared_diff(a.data(), b.data(), a.size());
}
inline void AddConstant(std::span<double> x, double c) {
  Active().add_constant(x.data(), x.size(), c);
}
inline void Divide(std::span<double> x, double d) {
  Active().divide(x.data(), x.size(), d);
}
inline std::size_t ThresholdGe(std::span<const double> x, double level,
                               std::span<std::uint8_t> out) {
  return Active().threshold_ge(x.data(), x.size(), level, out.data());
}

namespace detail {
const KernelTable* SelectByName(std::string_view name);
}  // namespace detail

}  // namespace trackcut::kernels

#endif  // TRACKCUT_KERNELS_H_
