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

#ifndef TRACKCUT_SUPERPIXEL_GRAPH_H_
#define TRACKCUT_SUPERPIXEL_GRAPH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "trackcut/dense_map.h"
#include "trackcut/geometry.h"

namespace trackcut {

struct SuperpixelNode {
  int frame_index = 0;
  int local_label = 0;  // label within its frame's superpixel map
  Rgb mean_colour{0.0, 0.0, 0.0};
  std::vector<std::uint32_t> pixels;  // row-major indices in its frame
};

struct GraphEdge {
  int a = 0;  // a < b
  int b = 0;
  bool temporal = false;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Space-time superpixel graph. Nodes of frame t occupy the index range
// [frame_offsets[t], frame_offsets[t+1]).
struct SuperpixelGraph {
  FrameSize size;
  std::vector<SuperpixelNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<int> frame_offsets;

  int NodeIndex(int frame, int local_label) const {
    return frame_offsets[frame] + local_label;
  }
  int FrameCount() const {
    return frame_offsets.empty() ? 0
                                 : static_cast<int>(frame_offsets.size()) - 1;
  }
};

// Spatial edges join superpixels that touch under 8-connectivity. A temporal
// edge joins s on frame t to s' on frame t+1 when some pixel of s, displaced
// by its rounded flow vector, lands inside s'. `flows` is either empty (zero
// motion) or holds one field per transition.
SuperpixelGraph BuildGraph(std::span<const LabelMap> superpixels,
                           std::span<const RgbImage> frames,
                           std::span<const FlowField> flows);

// Regular grid of `cell` x `cell` blocks, used when no superpixel map is
// supplied.
LabelMap GridSuperpixels(const FrameSize& size, int cell);

}  // namespace trackcut

#endif  // TRACKCUT_SUPERPIXEL_GRAPH_H_
