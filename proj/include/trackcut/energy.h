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

#ifndef TRACKCUT_ENERGY_H_
#define TRACKCUT_ENERGY_H_

#include <span>
#include <utility>
#include <vector>

#include "trackcut/dense_map.h"
#include "trackcut/gmm.h"
#include "trackcut/superpixel_graph.h"

namespace trackcut {

inline constexpr double kDefaultProbFloor = 1e-8;

// (-log max(p_fg, floor), -log max(p_bg, floor)) under the two colour models.
std::pair<double, double> ColourUnary(const GaussianMixture& fg,
                                      const GaussianMixture& bg,
                                      const Rgb& colour,
                                      double prob_floor = kDefaultProbFloor);

// -log max(c, floor) for a foreground label, -log max(1 - c, floor) otherwise.
double SemanticUnary(double confidence, bool foreground,
                     double prob_floor = kDefaultProbFloor);

// exp(-|ci - cj|^2 / (2 mean_sq_dist)).
double PairwiseWeight(const Rgb& ci, const Rgb& cj, double mean_sq_dist);

// Mean squared colour distance over all graph edges, floored at `floor`.
double MeanEdgeColourDistance(const SuperpixelGraph& graph,
                              double floor = 1e-12);

// Labels: 0 is background, 1..C are object classes.
//
//   E(x) = sum_i (colour_i(x_i) + lambda_o semantic_i(x_i))
//        + lambda_p sum_edges weight_e * distance(x_a, x_b)
//
// `label_distance` is the pairwise label cost (row-major L x L); empty means
// Potts. Expansion needs it to be a metric.
struct EnergyModel {
  int num_labels = 2;
  std::vector<double> colour_unary;    // node-major, num_labels per node
  std::vector<double> semantic_unary;  // node-major, num_labels per node
  std::vector<double> edge_weight;     // aligned with graph.edges
  double lambda_o = 1.0;
  double lambda_p = 0.5;
  std::vector<double> label_distance;

  double Unary(int node, int label) const {
    const std::size_t k = static_cast<std::size_t>(node) * num_labels + label;
    return colour_unary[k] + lambda_o * semantic_unary[k];
  }
  double LabelDistance(int a, int b) const {
    if (label_distance.empty()) return a == b ? 0.0 : 1.0;
    return label_distance[static_cast<std::size_t>(a) * num_labels + b];
  }
  void Validate(const SuperpixelGraph& graph) const;
};

double EnergyOf(const EnergyModel& model, const SuperpixelGraph& graph,
                std::span<const int> labeling);

// Per-node argmin of the unary costs (smallest label on ties).
std::vector<int> UnaryArgmin(const EnergyModel& model, int node_count);

struct ExpansionResult {
  std::vector<int> labeling;
  double energy = 0.0;
  // Energy before any move, then after every accepted move.
  std::vector<double> energy_trace;
  int cycles = 0;
};

// Alpha-expansion with one max-flow per move. A move is kept only when it
// strictly lowers the energy; stops after a full cycle without improvement.
// Throws ValidationError("expansion requires metric pairwise") when the
// label distance is not a metric.
ExpansionResult AlphaExpansion(const EnergyModel& model,
                               const SuperpixelGraph& graph,
                               std::vector<int> init);

struct SegmentationOptions {
  double lambda_o = 1.0;
  double lambda_p = 0.5;
  double fg_threshold = 0.5;  // superpixels with c >= this feed the fg model
  double bg_threshold = 0.5;  // superpixels with c < this feed the bg model
  double prob_floor = kDefaultProbFloor;
  GmmOptions gmm;
};

struct SegmentationOutcome {
  EnergyModel model;
  ExpansionResult expansion;
  bool colour_term_used = false;
};

// Assembles the energy from per-class superpixel confidences
// (class_confidence[k][node] for class k+1) and minimises it. The
// background semantic likelihood is 1 - max_k c_k. When a colour model
// cannot be fitted (no superpixel reaches the threshold) the colour term is
// dropped for every label.
SegmentationOutcome Segment(const SuperpixelGraph& graph,
                            const std::vector<std::vector<double>>& class_confidence,
                            const SegmentationOptions& opts);

// Paints node labels back onto per-frame label maps.
std::vector<LabelMap> PaintLabels(const SuperpixelGraph& graph,
                                  std::span<const int> labeling);

}  // namespace trackcut

#endif  // TRACKCUT_ENERGY_H_
