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

#include <algorithm>
#include <cmath>

#include "trackcut/energy.h"
#include "trackcut/errors.h"
#include "trackcut/max_flow.h"

namespace trackcut {

namespace {

constexpr int kMaxCycles = 100;

void RequireMetric(const EnergyModel& model) {
  const int n = model.num_labels;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double d = model.LabelDistance(a, b);
      const bool ok = (a == b ? d == 0.0 : d > 0.0) &&
                      d == model.LabelDistance(b, a) && std::isfinite(d);
      if (!ok) throw ValidationError("expansion requires metric pairwise");
      for (int c = 0; c < n; ++c) {
        const double via = d + model.LabelDistance(b, c);
        if (model.LabelDistance(a, c) > via * (1.0 + 1e-12)) {
          throw ValidationError("expansion requires metric pairwise");
        }
      }
    }
  }
}

// Best expansion of `alpha` from `current`. Source side of the cut keeps the
// current label, sink side switches to alpha.
std::vector<int> ExpansionMove(const EnergyModel& model,
                               const SuperpixelGraph& graph,
                               const std::vector<int>& current, int alpha) {
  const int n = static_cast<int>(current.size());
  std::vector<int> var(n, -1);
  int vars = 0;
  for (int i = 0; i < n; ++i) {
    if (current[i] != alpha) var[i] = vars++;
  }
  if (vars == 0) return current;

  std::vector<double> keep(vars, 0.0), flip(vars, 0.0);
  for (int i = 0; i < n; ++i) {
    if (var[i] < 0) continue;
    keep[var[i]] = model.Unary(i, current[i]);
    flip[var[i]] = model.Unary(i, alpha);
  }

  const int source = vars;
  const int sink = vars + 1;
  MaxFlowGraph<double> flow(vars + 2, source, sink);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const GraphEdge& edge = graph.edges[e];
    const double w = model.lambda_p * model.edge_weight[e];
    if (w == 0.0) continue;
    const int va = var[edge.a];
    const int vb = var[edge.b];
    const int la = current[edge.a];
    const int lb = current[edge.b];
    if (va < 0 && vb < 0) continue;
    if (vb < 0) {
      keep[va] += w * model.LabelDistance(la, alpha);
      continue;
    }
    if (va < 0) {
      keep[vb] += w * model.LabelDistance(alpha, lb);
      continue;
    }
    const double e00 = w * model.LabelDistance(la, lb);
    const double e01 = w * model.LabelDistance(la, alpha);
    const double e10 = w * model.LabelDistance(alpha, lb);
    // E = e00 + (e10 - e00) x_a + (0 - e10) x_b + (e01 + e10 - e00)(1-x_a) x_b
    flip[va] += e10 - e00;
    flip[vb] -= e10;
    flow.AddEdge(va, vb, std::max(0.0, e01 + e10 - e00));
  }
  for (int v = 0; v < vars; ++v) {
    const double diff = flip[v] - keep[v];
    if (diff > 0.0) {
      flow.AddEdge(source, v, diff);
    } else if (diff < 0.0) {
      flow.AddEdge(v, sink, -diff);
    }
  }
  flow.Solve();
  const std::vector<bool> source_side = flow.SourceSide();
  std::vector<int> next = current;
  for (int i = 0; i < n; ++i) {
    if (var[i] >= 0 && !source_side[var[i]]) next[i] = alpha;
  }
  return next;
}

}  // namespace

ExpansionResult AlphaExpansion(const EnergyModel& model,
                               const SuperpixelGraph& graph,
                               std::vector<int> init) {
  model.Validate(graph);
  RequireMetric(model);
  ExpansionResult result;
  result.labeling = std::move(init);
  result.energy = EnergyOf(model, graph, result.labeling);
  result.energy_trace.push_back(result.energy);

  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    ++result.cycles;
    bool improved = false;
    for (int alpha = 0; alpha < model.num_labels; ++alpha) {
      std::vector<int> candidate =
          ExpansionMove(model, graph, result.labeling, alpha);
      const double energy = EnergyOf(model, graph, candidate);
      const double slack = 1e-12 * std::max(1.0, std::abs(result.energy));
      if (energy < result.energy - slack) {
        result.labeling = std::move(candidate);
        result.energy = energy;
        result.energy_trace.push_back(energy);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return result;
}

}  // namespace trackcut
