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

#include "trackcut/kernels.h"

namespace trackcut::kernels {

namespace {

double SumScalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double DotScalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double SumSquaredDiffScalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void AddConstantScalar(double* x, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) x[i] += c;
}

void DivideScalar(double* x, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) x[i] /= c;
}

std::size_t ThresholdGeScalar(const double* x, std::size_t n, double level,
                              std::uint8_t* out) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] >= level ? 1 : 0;
    count += out[i];
  }
  return count;
}

constexpr KernelTable kScalar{
    "scalar",          &SumScalar,   &DotScalar,
    &SumSquaredDiffScalar, &AddConstantScalar, &DivideScalar,
    &ThresholdGeScalar,
};

}  // namespace

const KernelTable& ScalarKernels() { return kScalar; }

}  // namespace trackcut::kernels
