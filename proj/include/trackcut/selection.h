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

#ifndef TRACKCUT_SELECTION_H_
#define TRACKCUT_SELECTION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trackcut/mining.h"
#include "trackcut/proposal.h"

namespace trackcut {

// Facility-location track selection problem.
//
//   E(D) = sum_i max_{j in D} w_ij  -  delta |D|  +  lambda sum_{j in D} phi_j
//
// Every track is a client; selected tracks are open facilities. E of the
// empty set is 0. Selection is limited to at most `budget` facilities.
struct SelectionInstance {
  std::size_t n = 0;
  std::vector<double> w;  // n x n, row-major, symmetric
  std::vector<double> phi;
  double delta = 0.6;
  double lambda = 1.0;
  std::size_t budget = 0;

  double weight(std::size_t i, std::size_t j) const { return w[i * n + j]; }
  void Validate() const;
};

struct SelectionResult {
  std::vector<std::size_t> selected;  // in selection order
  double objective_value = 0.0;
  std::vector<double> gain_trace;
};

double Similarity(std::span<const double> fa, std::span<const double> fb);

// Builds the instance from mined tracks: w_ij = <F_i, F_j>, phi_i = track
// confidence. A budget of 0 means "no limit" (n).
SelectionInstance MakeSelectionInstance(std::span<const Track> tracks,
                                        double delta, double lambda,
                                        std::size_t budget = 0);

double Objective(const SelectionInstance& inst,
                 std::span<const std::size_t> subset);

// Marginal-gain greedy: add the best element (smallest index on ties) until
// the best gain is <= 0 or the budget is reached.
SelectionResult GreedySelect(const SelectionInstance& inst);

// Same selection as GreedySelect, with stale gains kept in a max-heap and
// re-evaluated only when they reach the top.
SelectionResult LazyGreedySelect(const SelectionInstance& inst);

// Exact maximiser over all subsets of size <= budget; ties go to the
// lexicographically smallest index set. Refuses n > 20.
SelectionResult BruteForceSelect(const SelectionInstance& inst);

// Plain text: "n delta lambda budget", then n phi values, then n rows of w.
SelectionInstance ParseSelectionInstance(const std::string& text);
std::string FormatSelectionInstance(const SelectionInstance& inst);

}  // namespace trackcut

#endif  // TRACKCUT_SELECTION_H_
