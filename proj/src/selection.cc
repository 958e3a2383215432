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

#include "trackcut/selection.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

#include "trackcut/errors.h"
#include "trackcut/kernels.h"

namespace trackcut {

namespace {

constexpr std::size_t kBruteForceLimit = 20;

// Per-client best similarity to the open facilities.
class CoverageState {
 public:
  explicit CoverageState(const SelectionInstance& inst)
      : inst_(inst), best_(inst.n, 0.0) {}

  bool empty() const { return size_ == 0; }

  double Gain(std::size_t j) const {
    double coverage = 0.0;
    if (empty()) {
      for (std::size_t i = 0; i < inst_.n; ++i) coverage += inst_.weight(i, j);
    } else {
      for (std::size_t i = 0; i < inst_.n; ++i) {
        coverage += std::max(0.0, inst_.weight(i, j) - best_[i]);
      }
    }
    return coverage - inst_.delta + inst_.lambda * inst_.phi[j];
  }

  void Open(std::size_t j) {
    for (std::size_t i = 0; i < inst_.n; ++i) {
      best_[i] = empty() ? inst_.weight(i, j)
                         : std::max(best_[i], inst_.weight(i, j));
    }
    ++size_;
  }

 private:
  const SelectionInstance& inst_;
  std::vector<double> best_;
  std::size_t size_ = 0;
};

SelectionResult Finish(const SelectionInstance& inst,
                       std::vector<std::size_t> selected,
                       std::vector<double> gains) {
  SelectionResult r;
  r.objective_value = Objective(inst, selected);
  r.selected = std::move(selected);
  r.gain_trace = std::move(gains);
  return r;
}

}  // namespace

void SelectionInstance::Validate() const {
  if (w.size() != n * n) throw ValidationError("w must be n x n");
  if (phi.size() != n) throw ValidationError("phi must have n entries");
  if (!(delta >= 0.0) || !(lambda >= 0.0)) {
    throw ValidationError("delta and lambda must be >= 0");
  }
  if (n > 0 && (budget < 1 || budget > n)) {
    throw ValidationError("budget must lie in [1, n]");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(phi[i] >= 0.0 && phi[i] <= 1.0)) {
      throw ValidationError("phi values must lie in [0,1]");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(weight(i, j))) {
        throw ValidationError("w entries must be finite");
      }
      if (weight(i, j) != weight(j, i)) {
        throw ValidationError("w must be symmetric");
      }
    }
  }
}

double Similarity(std::span<const double> fa, std::span<const double> fb) {
  if (fa.size() != fb.size()) {
    throw ValidationError("similarity: feature dimensionality mismatch");
  }
  return kernels::Dot(fa, fb);
}

SelectionInstance MakeSelectionInstance(std::span<const Track> tracks,
                                        double delta, double lambda,
                                        std::size_t budget) {
  SelectionInstance inst;
  inst.n = tracks.size();
  inst.delta = delta;
  inst.lambda = lambda;
  inst.budget = budget == 0 ? inst.n : std::min(budget, inst.n);
  inst.w.assign(inst.n * inst.n, 0.0);
  inst.phi.resize(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    inst.phi[i] = std::clamp(tracks[i].phi, 0.0, 1.0);
    for (std::size_t j = i; j < inst.n; ++j) {
      const double s = Similarity(tracks[i].feature, tracks[j].feature);
      inst.w[i * inst.n + j] = s;
      inst.w[j * inst.n + i] = s;
    }
  }
  inst.Validate();
  return inst;
}

double Objective(const SelectionInstance& inst,
                 std::span<const std::size_t> subset) {
  if (subset.empty()) return 0.0;
  double coverage = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    double best = inst.weight(i, subset[0]);
    for (std::size_t k = 1; k < subset.size(); ++k) {
      best = std::max(best, inst.weight(i, subset[k]));
    }
    coverage += best;
  }
  std::vector<std::size_t> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end());
  double phi_sum = 0.0;
  for (std::size_t j : order) phi_sum += inst.phi[j];
  return coverage - inst.delta * static_cast<double>(subset.size()) +
         inst.lambda * phi_sum;
}

SelectionResult GreedySelect(const SelectionInstance& inst) {
  inst.Validate();
  CoverageState state(inst);
  std::vector<std::uint8_t> chosen(inst.n, 0);
  std::vector<std::size_t> selected;
  std::vector<double> gains;
  while (selected.size() < inst.budget) {
    std::size_t best_j = inst.n;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (chosen[j]) continue;
      const double g = state.Gain(j);
      if (best_j == inst.n || g > best_gain) {
        best_j = j;
        best_gain = g;
      }
    }
    if (best_j == inst.n || best_gain <= 0.0) break;
    chosen[best_j] = 1;
    state.Open(best_j);
    selected.push_back(best_j);
    gains.push_back(best_gain);
  }
  return Finish(inst, std::move(selected), std::move(gains));
}

SelectionResult LazyGreedySelect(const SelectionInstance& inst) {
  inst.Validate();
  if (inst.n == 0) return {};
  CoverageState state(inst);
  std::vector<std::size_t> selected;
  std::vector<double> gains;

  // The first step is evaluated exhaustively: with negative similarities the
  // empty-set gain is not an upper bound on later gains, so staleness is only
  // safe once one facility is open.
  std::size_t first = 0;
  double first_gain = state.Gain(0);
  for (std::size_t j = 1; j < inst.n; ++j) {
    const double g = state.Gain(j);
    if (g > first_gain) {
      first = j;
      first_gain = g;
    }
  }
  if (first_gain <= 0.0) return Finish(inst, {}, {});
  state.Open(first);
  selected.push_back(first);
  gains.push_back(first_gain);

  struct Entry {
    double bound;
    std::size_t index;
    std::size_t step;  // selection size when `bound` was computed
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.index > b.index;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t j = 0; j < inst.n; ++j) {
    if (j != first) heap.push({state.Gain(j), j, selected.size()});
  }

  while (selected.size() < inst.budget && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    if (top.step != selected.size()) {
      top.bound = state.Gain(top.index);
      top.step = selected.size();
      heap.push(top);
      continue;
    }
    if (top.bound <= 0.0) break;
    state.Open(top.index);
    selected.push_back(top.index);
    gains.push_back(top.bound);
  }
  return Finish(inst, std::move(selected), std::move(gains));
}

SelectionResult BruteForceSelect(const SelectionInstance& inst) {
  inst.Validate();
  if (inst.n > kBruteForceLimit) {
    throw ValidationError("brute-force selection limited to n <= 20");
  }
  std::vector<std::size_t> best_set;
  double best_value = 0.0;  // the empty set
  std::vector<std::size_t> subset;
  const std::uint32_t limit = 1u << inst.n;
  for (std::uint32_t bits = 1; bits < limit; ++bits) {
    if (static_cast<std::size_t>(__builtin_popcount(bits)) > inst.budget) {
      continue;
    }
    subset.clear();
    for (std::size_t i = 0; i < inst.n; ++i) {
      if (bits & (1u << i)) subset.push_back(i);
    }
    const double value = Objective(inst, subset);
    if (value > best_value ||
        (value == best_value && std::lexicographical_compare(
                                    subset.begin(), subset.end(),
                                    best_set.begin(), best_set.end()))) {
      best_value = value;
      best_set = subset;
    }
  }
  SelectionResult r;
  r.selected = std::move(best_set);
  r.objective_value = best_value;
  return r;
}

SelectionInstance ParseSelectionInstance(const std::string& text) {
  std::istringstream in(text);
  SelectionInstance inst;
  if (!(in >> inst.n >> inst.delta >> inst.lambda >> inst.budget)) {
    throw ValidationError("selection instance: bad header");
  }
  inst.phi.resize(inst.n);
  for (double& p : inst.phi) {
    if (!(in >> p)) throw ValidationError("selection instance: bad phi");
  }
  inst.w.resize(inst.n * inst.n);
  for (double& v : inst.w) {
    if (!(in >> v)) throw ValidationError("selection instance: bad w");
  }
  if (inst.budget == 0) inst.budget = inst.n;
  inst.Validate();
  return inst;
}

std::string FormatSelectionInstance(const SelectionInstance& inst) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  os << inst.n << ' ' << num(inst.delta) << ' ' << num(inst.lambda) << ' '
     << inst.budget << '\n';
  for (std::size_t i = 0; i < inst.n; ++i) {
    os << (i ? " " : "") << num(inst.phi[i]);
  }
  os << '\n';
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      os << (j ? " " : "") << num(inst.weight(i, j));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace trackcut
