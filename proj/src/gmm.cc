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

#include "trackcut/gmm.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "trackcut/errors.h"

namespace trackcut {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

constexpr double kLog2Pi = 1.8378770664093454836;

Vector3d ToVec(const Rgb& c) { return Vector3d(c[0], c[1], c[2]); }

Matrix3d ToMat(const std::array<double, 9>& a) {
  Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = a[r * 3 + c];
  }
  return m;
}

std::array<double, 9> FromMat(const Matrix3d& m) {
  std::array<double, 9> a{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a[r * 3 + c] = m(r, c);
  }
  return a;
}

double LogSumExp(const std::vector<double>& v) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

// Uniform in [0,1) from the top 53 bits, identical on every platform.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t DrawProportional(std::mt19937_64& rng,
                             const std::vector<double>& mass) {
  double total = 0.0;
  for (double m : mass) total += m;
  const double target = Uniform(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    last_positive = i;
    acc += mass[i];
    if (target < acc) return i;
  }
  return last_positive;
}

double SquaredDistance(const Rgb& a, const Rgb& b) {
  double d = 0.0;
  for (int c = 0; c < 3; ++c) d += (a[c] - b[c]) * (a[c] - b[c]);
  return d;
}

// M-step from responsibilities (sample-major, `m` columns).
std::vector<GaussianComponent> MaximizationStep(
    std::span<const WeightedColour> samples, const std::vector<double>& resp,
    std::size_t m, double total_weight, double cov_epsilon) {
  std::vector<GaussianComponent> out;
  for (std::size_t k = 0; k < m; ++k) {
    double mass = 0.0;
    Vector3d mean = Vector3d::Zero();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double r = samples[i].weight * resp[i * m + k];
      mass += r;
      mean += r * ToVec(samples[i].colour);
    }
    if (mass <= 1e-12 * total_weight) continue;
    mean /= mass;
    Matrix3d scatter = Matrix3d::Zero();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double r = samples[i].weight * resp[i * m + k];
      const Vector3d d = ToVec(samples[i].colour) - mean;
      scatter += r * d * d.transpose();
    }
    scatter /= mass;
    // Clipping the spectrum at epsilon maximises the expected complete-data
    // likelihood over covariances with eigenvalues >= epsilon.
    Eigen::SelfAdjointEigenSolver<Matrix3d> eig(scatter);
    const Vector3d clipped = eig.eigenvalues().cwiseMax(cov_epsilon);
    const Matrix3d cov = eig.eigenvectors() * clipped.asDiagonal() *
                         eig.eigenvectors().transpose();
    GaussianComponent comp;
    comp.weight = mass / total_weight;
    comp.mean = {mean(0), mean(1), mean(2)};
    comp.covariance = FromMat(0.5 * (cov + cov.transpose()));
    out.push_back(comp);
  }
  double weight_sum = 0.0;
  for (const auto& c : out) weight_sum += c.weight;
  for (auto& c : out) c.weight /= weight_sum;
  return out;
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("GMM needs a component");
  for (const GaussianComponent& c : components_) {
    if (!(c.weight > 0.0)) {
      throw ValidationError("GMM component weights must be positive");
    }
    const Matrix3d cov = ToMat(c.covariance);
    Eigen::SelfAdjointEigenSolver<Matrix3d> eig(cov);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
      throw ValidationError("GMM covariance must be positive definite");
    }
    const Vector3d inv = eig.eigenvalues().cwiseInverse();
    const Matrix3d inverse =
        eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
    const double log_det = eig.eigenvalues().array().log().sum();
    cache_.push_back({FromMat(inverse), std::log(c.weight) -
                                            0.5 * (3.0 * kLog2Pi + log_det)});
  }
}

void GaussianMixture::ComponentLogTerms(const Rgb& x,
                                        std::span<double> out) const {
  for (std::size_t k = 0; k < components_.size(); ++k) {
    double d[3];
    for (int c = 0; c < 3; ++c) d[c] = x[c] - components_[k].mean[c];
    const auto& inv = cache_[k].inverse;
    double mahal = 0.0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) mahal += d[r] * inv[r * 3 + c] * d[c];
    }
    out[k] = cache_[k].log_norm - 0.5 * mahal;
  }
}

double GaussianMixture::LogDensity(const Rgb& x) const {
  std::vector<double> terms(components_.size());
  ComponentLogTerms(x, terms);
  return LogSumExp(terms);
}

double GaussianMixture::Density(const Rgb& x) const {
  return std::exp(LogDensity(x));
}

double WeightedLogLikelihood(const GaussianMixture& model,
                             std::span<const WeightedColour> samples) {
  double ll = 0.0;
  for (const WeightedColour& s : samples) {
    if (s.weight > 0.0) ll += s.weight * model.LogDensity(s.colour);
  }
  return ll;
}

GmmFit FitGmm(std::span<const WeightedColour> input, const GmmOptions& opts) {
  if (opts.components < 1) throw ValidationError("GMM needs >= 1 component");
  std::vector<WeightedColour> samples;
  double total_weight = 0.0;
  std::set<Rgb> distinct;
  for (const WeightedColour& s : input) {
    if (!(s.weight >= 0.0) || !std::isfinite(s.weight)) {
      throw ValidationError("GMM sample weights must be finite and >= 0");
    }
    if (s.weight == 0.0) continue;
    samples.push_back(s);
    total_weight += s.weight;
    distinct.insert(s.colour);
  }
  if (samples.empty() || !(total_weight > 0.0)) {
    throw ValidationError("GMM needs samples with positive total weight");
  }
  const std::size_t m = std::min<std::size_t>(
      static_cast<std::size_t>(opts.components), distinct.size());

  // k-means++ seeding.
  std::mt19937_64 rng(opts.seed);
  std::vector<double> mass(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mass[i] = samples[i].weight;
  std::vector<Rgb> centres{samples[DrawProportional(rng, mass)].colour};
  std::vector<double> nearest(samples.size(),
                              std::numeric_limits<double>::infinity());
  while (centres.size() < m) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      nearest[i] =
          std::min(nearest[i], SquaredDistance(samples[i].colour, centres.back()));
      mass[i] = samples[i].weight * nearest[i];
    }
    centres.push_back(samples[DrawProportional(rng, mass)].colour);
  }
  std::vector<double> resp(samples.size() * m, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::size_t best = 0;
    double best_d = SquaredDistance(samples[i].colour, centres[0]);
    for (std::size_t k = 1; k < m; ++k) {
      const double d = SquaredDistance(samples[i].colour, centres[k]);
      if (d < best_d) {
        best = k;
        best_d = d;
      }
    }
    resp[i * m + best] = 1.0;
  }

  GmmFit fit;
  GaussianMixture model(MaximizationStep(samples, resp, m, total_weight,
                                         opts.cov_epsilon));
  for (int iter = 0;; ++iter) {
    const std::size_t mk = model.components().size();
    resp.assign(samples.size() * mk, 0.0);
    double ll = 0.0;
    std::vector<double> terms(mk);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      model.ComponentLogTerms(samples[i].colour, terms);
      const double lse = LogSumExp(terms);
      ll += samples[i].weight * lse;
      for (std::size_t k = 0; k < mk; ++k) {
        resp[i * mk + k] = std::exp(terms[k] - lse);
      }
    }
    const bool converged = !fit.log_likelihood.empty() &&
                           ll - fit.log_likelihood.back() < opts.tol;
    fit.log_likelihood.push_back(ll);
    if (converged || iter >= opts.max_iters) break;
    model = GaussianMixture(
        MaximizationStep(samples, resp, mk, total_weight, opts.cov_epsilon));
  }
  fit.model = std::move(model);
  return fit;
}

}  // namespace trackcut
