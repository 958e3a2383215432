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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "trackcut/kernels.h"

namespace trackcut::kernels {
namespace {

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

class KernelEquivalenceTest
    : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelEquivalenceTest, MatchesScalar) {
  const KernelTable& scalar = ScalarKernels();
  const KernelTable& simd = *GetParam();
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n < 70; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<double> a = RandomVector(rng, n);
      const std::vector<double> b = RandomVector(rng, n);
      // Reductions may reassociate, so compare within a few ulps of the
      // magnitude sum.
      double magnitude = 1.0;
      for (std::size_t i = 0; i < n; ++i) magnitude += std::abs(a[i] * b[i]);
      const double tol = 1e-14 * magnitude * 4.0;
      EXPECT_NEAR(simd.sum(a.data(), n), scalar.sum(a.data(), n), tol);
      EXPECT_NEAR(simd.dot(a.data(), b.data(), n),
                  scalar.dot(a.data(), b.data(), n), tol);
      EXPECT_NEAR(simd.sum_squared_diff(a.data(), b.data(), n),
                  scalar.sum_squared_diff(a.data(), b.data(), n), tol * 16.0);

      // Element-wise kernels must be bit-identical.
      std::vector<double> x1 = a, x2 = a;
      scalar.add_constant(x1.data(), n, 0.37);
      simd.add_constant(x2.data(), n, 0.37);
      EXPECT_EQ(x1, x2);
      scalar.divide(x1.data(), n, 3.1);
      simd.divide(x2.data(), n, 3.1);
      EXPECT_EQ(x1, x2);

      std::vector<std::uint8_t> o1(n, 7), o2(n, 9);
      const double level = 0.25 * (rep - 2);
      EXPECT_EQ(scalar.threshold_ge(a.data(), n, level, o1.data()),
                simd.threshold_ge(a.data(), n, level, o2.data()));
      EXPECT_EQ(o1, o2);
    }
  }
}

TEST_P(KernelEquivalenceTest, ThresholdIncludesEquality) {
  const KernelTable& simd = *GetParam();
  const std::vector<double> x{0.5, 0.4999999, 0.5, 1.0, 0.0, 0.5, 0.6, 0.5, 0.2};
  std::vector<std::uint8_t> out(x.size());
  EXPECT_EQ(simd.threshold_ge(x.data(), x.size(), 0.5, out.data()), 6u);
  EXPECT_EQ(out, (std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1, 1, 1, 0}));
}

INSTANTIATE_TEST_SUITE_P(Available, KernelEquivalenceTest,
                         ::testing::ValuesIn(AvailableKernels()),
                         [](const auto& info) {
                           return std::string(info.param->name);
                         });

TEST(KernelDispatchTest, ScalarAlwaysAvailable) {
  const auto tables = AvailableKernels();
  ASSERT_FALSE(tables.empty());
  EXPECT_EQ(tables.front(), &ScalarKernels());
  EXPECT_EQ(detail::SelectByName("scalar"), &ScalarKernels());
}

TEST(KernelDispatchTest, ActiveIsAvailable) {
  const auto tables = AvailableKernels();
  EXPECT_NE(std::find(tables.begin(), tables.end(), &Active()), tables.end());
}

TEST(KernelDispatchTest, UnknownNameFallsBack) {
  EXPECT_EQ(detail::SelectByName("no-such-isa"), nullptr);
}

}  // namespace
}  // namespace trackcut::kernels
