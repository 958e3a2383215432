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

// AArch64 NEON variants. NEON is part of the AArch64 baseline, so no runtime
// probe is needed beyond the build-time architecture check.

#include <arm_neon.h>

#include "trackcut/kernels.h"

namespace trackcut::kernels {

namespace {

double SumNeon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double res = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) res += x[i];
  return res;
}

double DotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double res = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) res += a[i] * b[i];
  return res;
}

double SumSquaredDiffNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double res = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    res += d * d;
  }
  return res;
}

void AddConstantNeon(double* x, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vaddq_f64(vld1q_f64(x + i), vc));
  for (; i < n; ++i) x[i] += c;
}

void DivideNeon(double* x, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vdivq_f64(vld1q_f64(x + i), vc));
  for (; i < n; ++i) x[i] /= c;
}

std::size_t ThresholdGeNeon(const double* x, std::size_t n, double level,
                            std::uint8_t* out) {
  const float64x2_t vl = vdupq_n_f64(level);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t ge = vcgeq_f64(vld1q_f64(x + i), vl);
    out[i] = vgetq_lane_u64(ge, 0) ? 1 : 0;
    out[i + 1] = vgetq_lane_u64(ge, 1) ? 1 : 0;
    count += out[i] + out[i + 1];
  }
  for (; i < n; ++i) {
    out[i] = x[i] >= level ? 1 : 0;
    count += out[i];
  }
  return count;
}

constexpr KernelTable kNeon{
    "neon",          &SumNeon,   &DotNeon,
    &SumSquaredDiffNeon, &AddConstantNeon, &DivideNeon,
    &ThresholdGeNeon,
};

}  // namespace

namespace detail {
const KernelTable& NeonTableUnchecked() { return kNeon; }
}  // namespace detail

}  // namespace trackcut::kernels
