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

#ifndef TRACKCUT_GMM_H_
#define TRACKCUT_GMM_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "trackcut/dense_map.h"

namespace trackcut {

struct WeightedColour {
  Rgb colour;
  double weight;
};

struct GaussianComponent {
  double weight = 1.0;
  Rgb mean{0.0, 0.0, 0.0};
  std::array<double, 9> covariance{};  // row-major 3x3
};

// Full-covariance colour mixture. Density evaluation uses a cached inverse
// and log-normaliser per component.
class GaussianMixture {
 public:
  GaussianMixture() = default;
  explicit GaussianMixture(std::vector<GaussianComponent> components);

  const std::vector<GaussianComponent>& components() const {
    return components_;
  }
  double Density(const Rgb& x) const;
  double LogDensity(const Rgb& x) const;
  // log(weight_k) + log N(x | mean_k, cov_k) for every component.
  void ComponentLogTerms(const Rgb& x, std::span<double> out) const;

 private:
  struct Cached {
    std::array<double, 9> inverse;
    double log_norm;  // log(weight) - 0.5 * (3 log 2pi + log det)
  };
  std::vector<GaussianComponent> components_;
  std::vector<Cached> cache_;
};

struct GmmOptions {
  int components = 5;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double tol = 1e-6;
  double cov_epsilon = 1e-4;
};

struct GmmFit {
  GaussianMixture model;
  // Weighted log-likelihood of the data under each successive parameter set.
  std::vector<double> log_likelihood;
};

// Weighted EM seeded by k-means++ (draws proportional to weight times squared
// distance). The covariance update is the exact maximiser subject to every
// eigenvalue being >= cov_epsilon, which keeps each EM step monotone. The
// component count drops to the number of distinct colours when that is
// smaller. Throws when the total weight is not positive.
GmmFit FitGmm(std::span<const WeightedColour> samples, const GmmOptions& opts);

double WeightedLogLikelihood(const GaussianMixture& model,
                             std::span<const WeightedColour> samples);

}  // namespace trackcut

#endif  // TRACKCUT_GMM_H_
