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

#include "trackcut/energy.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "trackcut/errors.h"

namespace trackcut {

std::pair<double, double> ColourUnary(const GaussianMixture& fg,
                                      const GaussianMixture& bg,
                                      const Rgb& colour, double prob_floor) {
  const double log_floor = std::log(prob_floor);
  return {-std::max(fg.LogDensity(colour), log_floor),
          -std::max(bg.LogDensity(colour), log_floor)};
}

double SemanticUnary(double confidence, bool foreground, double prob_floor) {
  const double p = foreground ? confidence : 1.0 - confidence;
  return -std::log(std::max(p, prob_floor));
}

double PairwiseWeight(const Rgb& ci, const Rgb& cj, double mean_sq_dist) {
  double d = 0.0;
  for (int c = 0; c < 3; ++c) d += (ci[c] - cj[c]) * (ci[c] - cj[c]);
  return std::exp(-d / (2.0 * mean_sq_dist));
}

double MeanEdgeColourDistance(const SuperpixelGraph& graph, double floor) {
  if (graph.edges.empty()) return floor;
  double total = 0.0;
  for (const GraphEdge& e : graph.edges) {
    const Rgb& a = graph.nodes[e.a].mean_colour;
    const Rgb& b = graph.nodes[e.b].mean_colour;
    for (int c = 0; c < 3; ++c) total += (a[c] - b[c]) * (a[c] - b[c]);
  }
  return std::max(total / static_cast<double>(graph.edges.size()), floor);
}

void EnergyModel::Validate(const SuperpixelGraph& graph) const {
  const std::size_t n = graph.nodes.size();
  if (num_labels < 1) throw ValidationError("energy: need >= 1 label");
  if (colour_unary.size() != n * num_labels ||
      semantic_unary.size() != n * num_labels) {
    throw ValidationError("energy: unary table size mismatch");
  }
  if (edge_weight.size() != graph.edges.size()) {
    throw ValidationError("energy: one weight per graph edge required");
  }
  for (double w : edge_weight) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("energy: edge weights must be finite and >= 0");
    }
  }
  if (!(lambda_o >= 0.0) || !(lambda_p >= 0.0)) {
    throw ValidationError("energy: lambdas must be >= 0");
  }
  if (!label_distance.empty() &&
      label_distance.size() !=
          static_cast<std::size_t>(num_labels) * num_labels) {
    throw ValidationError("energy: label distance must be L x L");
  }
}

double EnergyOf(const EnergyModel& model, const SuperpixelGraph& graph,
                std::span<const int> labeling) {
  if (labeling.size() != graph.nodes.size()) {
    throw ValidationError("energy: labeling size mismatch");
  }
  double unary = 0.0;
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    if (labeling[i] < 0 || labeling[i] >= model.num_labels) {
      throw ValidationError("energy: label out of range");
    }
    unary += model.Unary(static_cast<int>(i), labeling[i]);
  }
  double pairwise = 0.0;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const GraphEdge& edge = graph.edges[e];
    pairwise += model.edge_weight[e] *
                model.LabelDistance(labeling[edge.a], labeling[edge.b]);
  }
  return unary + model.lambda_p * pairwise;
}

std::vector<int> UnaryArgmin(const EnergyModel& model, int node_count) {
  std::vector<int> labels(static_cast<std::size_t>(node_count), 0);
  for (int i = 0; i < node_count; ++i) {
    double best = model.Unary(i, 0);
    for (int l = 1; l < model.num_labels; ++l) {
      const double u = model.Unary(i, l);
      if (u < best) {
        best = u;
        labels[i] = l;
      }
    }
  }
  return labels;
}

namespace {

std::optional<GaussianMixture> TryFit(const std::vector<WeightedColour>& s,
                                      const GmmOptions& opts) {
  double total = 0.0;
  for (const WeightedColour& c : s) total += c.weight;
  if (s.empty() || !(total > 0.0)) return std::nullopt;
  return FitGmm(s, opts).model;
}

}  // namespace

SegmentationOutcome Segment(
    const SuperpixelGraph& graph,
    const std::vector<std::vector<double>>& class_confidence,
    const SegmentationOptions& opts) {
  const std::size_t n = graph.nodes.size();
  const std::size_t classes = class_confidence.size();
  if (classes == 0) throw ValidationError("segment: need >= 1 class");
  for (const auto& c : class_confidence) {
    if (c.size() != n) {
      throw ValidationError("segment: one confidence per node required");
    }
    for (double v : c) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("segment: confidence outside [0,1]");
      }
    }
  }
  const int labels = static_cast<int>(classes) + 1;

  SegmentationOutcome out;
  EnergyModel& model = out.model;
  model.num_labels = labels;
  model.lambda_o = opts.lambda_o;
  model.lambda_p = opts.lambda_p;
  model.colour_unary.assign(n * labels, 0.0);
  model.semantic_unary.assign(n * labels, 0.0);

  std::vector<double> max_conf(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < classes; ++k) {
      max_conf[i] = std::max(max_conf[i], class_confidence[k][i]);
    }
    model.semantic_unary[i * labels] =
        SemanticUnary(max_conf[i], false, opts.prob_floor);
    for (std::size_t k = 0; k < classes; ++k) {
      model.semantic_unary[i * labels + k + 1] =
          SemanticUnary(class_confidence[k][i], true, opts.prob_floor);
    }
  }

  std::vector<WeightedColour> bg_samples;
  for (std::size_t i = 0; i < n; ++i) {
    if (max_conf[i] < opts.bg_threshold) {
      bg_samples.push_back({graph.nodes[i].mean_colour, 1.0 - max_conf[i]});
    }
  }
  std::optional<GaussianMixture> bg = TryFit(bg_samples, opts.gmm);
  std::vector<GaussianMixture> fg;
  bool have_models = bg.has_value();
  for (std::size_t k = 0; k < classes && have_models; ++k) {
    std::vector<WeightedColour> samples;
    for (std::size_t i = 0; i < n; ++i) {
      if (class_confidence[k][i] >= opts.fg_threshold) {
        samples.push_back({graph.nodes[i].mean_colour, class_confidence[k][i]});
      }
    }
    GmmOptions o = opts.gmm;
    o.seed = opts.gmm.seed + k + 1;
    std::optional<GaussianMixture> m = TryFit(samples, o);
    if (!m) {
      have_models = false;
    } else {
      fg.push_back(std::move(*m));
    }
  }
  if (have_models) {
    out.colour_term_used = true;
    const double log_floor = std::log(opts.prob_floor);
    for (std::size_t i = 0; i < n; ++i) {
      const Rgb& c = graph.nodes[i].mean_colour;
      model.colour_unary[i * labels] = -std::max(bg->LogDensity(c), log_floor);
      for (std::size_t k = 0; k < classes; ++k) {
        model.colour_unary[i * labels + k + 1] =
            -std::max(fg[k].LogDensity(c), log_floor);
      }
    }
  }

  const double mean_sq = MeanEdgeColourDistance(graph);
  model.edge_weight.reserve(graph.edges.size());
  for (const GraphEdge& e : graph.edges) {
    model.edge_weight.push_back(PairwiseWeight(
        graph.nodes[e.a].mean_colour, graph.nodes[e.b].mean_colour, mean_sq));
  }

  out.expansion = AlphaExpansion(model, graph,
                                 UnaryArgmin(model, static_cast<int>(n)));
  return out;
}

std::vector<LabelMap> PaintLabels(const SuperpixelGraph& graph,
                                  std::span<const int> labeling) {
  if (labeling.size() != graph.nodes.size()) {
    throw ValidationError("paint: labeling size mismatch");
  }
  std::vector<LabelMap> maps(static_cast<std::size_t>(graph.FrameCount()),
                             LabelMap(graph.size));
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const SuperpixelNode& node = graph.nodes[i];
    auto values = maps[node.frame_index].values();
    for (std::uint32_t p : node.pixels) values[p] = labeling[i];
  }
  return maps;
}

}  // namespace trackcut
