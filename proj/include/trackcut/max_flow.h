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

#ifndef TRACKCUT_MAX_FLOW_H_
#define TRACKCUT_MAX_FLOW_H_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "trackcut/errors.h"

namespace trackcut {

// Dinic's algorithm on a directed capacitated graph. Integral capacity types
// give exact results; floating capacities treat residuals below a relative
// tolerance as saturated.
template <typename Cap>
class MaxFlowGraph {
 public:
  MaxFlowGraph(int nodes, int source, int sink)
      : adjacency_(static_cast<std::size_t>(nodes)),
        level_(static_cast<std::size_t>(nodes)),
        cursor_(static_cast<std::size_t>(nodes)),
        source_(source),
        sink_(sink) {
    if (nodes < 2 || source < 0 || sink < 0 || source >= nodes ||
        sink >= nodes || source == sink) {
      throw ValidationError("max-flow: bad node count or terminals");
    }
  }

  int node_count() const { return static_cast<int>(adjacency_.size()); }

  // Adds from->to with `capacity` and the reverse arc with
  // `reverse_capacity`.
  void AddEdge(int from, int to, Cap capacity, Cap reverse_capacity = Cap{}) {
    if (capacity < Cap{} || reverse_capacity < Cap{}) {
      throw ValidationError("max-flow: negative capacity");
    }
    if (from < 0 || to < 0 || from >= node_count() || to >= node_count()) {
      throw ValidationError("max-flow: edge endpoint out of range");
    }
    if (from == to) return;
    adjacency_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    adjacency_[to].push_back(arcs_.size());
    arcs_.push_back({from, reverse_capacity});
    max_capacity_ = std::max({max_capacity_, capacity, reverse_capacity});
  }

  Cap Solve() {
    if constexpr (std::is_floating_point_v<Cap>) {
      epsilon_ = max_capacity_ * Cap(1e-12);
    }
    Cap total{};
    while (BuildLevels()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (true) {
        const Cap pushed = Augment(source_, std::numeric_limits<Cap>::max());
        if (!(pushed > Cap{})) break;
        total += pushed;
      }
    }
    return total;
  }

  // After Solve(): nodes reachable from the source in the residual graph.
  std::vector<bool> SourceSide() const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::vector<int> stack{source_};
    seen[source_] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (std::size_t a : adjacency_[v]) {
        const Arc& arc = arcs_[a];
        if (arc.residual > epsilon_ && !seen[arc.to]) {
          seen[arc.to] = true;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    Cap residual;
  };

  bool BuildLevels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{source_};
    level_[source_] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (std::size_t a : adjacency_[v]) {
        const Arc& arc = arcs_[a];
        if (arc.residual > epsilon_ && level_[arc.to] < 0) {
          level_[arc.to] = level_[v] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  Cap Augment(int v, Cap limit) {
    if (v == sink_) return limit;
    for (std::size_t& i = cursor_[v]; i < adjacency_[v].size(); ++i) {
      const std::size_t a = adjacency_[v][i];
      Arc& arc = arcs_[a];
      if (arc.residual <= epsilon_ || level_[arc.to] != level_[v] + 1) {
        continue;
      }
      const Cap pushed = Augment(arc.to, std::min(limit, arc.residual));
      if (pushed > Cap{}) {
        arc.residual -= pushed;
        arcs_[a ^ 1].residual += pushed;
        return pushed;
      }
    }
    return Cap{};
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  int source_;
  int sink_;
  Cap max_capacity_{};
  Cap epsilon_{};
};

}  // namespace trackcut

#endif  // TRACKCUT_MAX_FLOW_H_
