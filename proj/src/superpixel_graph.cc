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

#include "trackcut/superpixel_graph.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "trackcut/errors.h"
#include "trackcut/pooling.h"

namespace trackcut {

SuperpixelGraph BuildGraph(std::span<const LabelMap> superpixels,
                           std::span<const RgbImage> frames,
                           std::span<const FlowField> flows) {
  if (superpixels.size() != frames.size() || frames.empty()) {
    throw ValidationError("need one superpixel map per frame");
  }
  if (!flows.empty() && flows.size() + 1 != frames.size()) {
    throw ValidationError("need one flow field per frame transition");
  }
  SuperpixelGraph g;
  g.size = frames.front().size();
  const FrameSize& size = g.size;
  const int w = size.width;
  const int h = size.height;

  g.frame_offsets.push_back(0);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (!(frames[t].size() == size) || !(superpixels[t].size() == size)) {
      throw ValidationError("frame " + std::to_string(t) + " size mismatch");
    }
    const int count = ValidateSuperpixels(superpixels[t]);
    const int offset = g.frame_offsets.back();
    for (int s = 0; s < count; ++s) {
      g.nodes.push_back(SuperpixelNode{.frame_index = static_cast<int>(t),
                                       .local_label = s,
                                       .mean_colour = {},
                                       .pixels = {}});
    }
    const auto labels = superpixels[t].values();
    const auto pixels = frames[t].pixels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      SuperpixelNode& node = g.nodes[offset + labels[i]];
      node.pixels.push_back(static_cast<std::uint32_t>(i));
      for (int c = 0; c < 3; ++c) node.mean_colour[c] += pixels[i][c];
    }
    for (int s = 0; s < count; ++s) {
      SuperpixelNode& node = g.nodes[offset + s];
      for (double& c : node.mean_colour) {
        c /= static_cast<double>(node.pixels.size());
      }
    }
    g.frame_offsets.push_back(offset + count);
  }

  std::set<std::pair<int, int>> spatial, temporal;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const int offset = g.frame_offsets[t];
    const LabelMap& labels = superpixels[t];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int a = offset + labels.at(x, y);
        // Forward half of the 8-neighbourhood covers every pair once.
        constexpr int kOffsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
        for (const auto& d : kOffsets) {
          const int nx = x + d[0];
          const int ny = y + d[1];
          if (!size.Contains(nx, ny)) continue;
          const int b = offset + labels.at(nx, ny);
          if (a != b) spatial.emplace(std::min(a, b), std::max(a, b));
        }
      }
    }
    if (t + 1 == frames.size()) continue;
    const int next_offset = g.frame_offsets[t + 1];
    const LabelMap& next = superpixels[t + 1];
    if (!flows.empty() &&
        (!(flows[t].u.size() == size) || !(flows[t].v.size() == size))) {
      throw ValidationError("flow field size mismatch");
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        int tx = x, ty = y;
        if (!flows.empty()) {
          tx += static_cast<int>(std::lround(flows[t].u.at(x, y)));
          ty += static_cast<int>(std::lround(flows[t].v.at(x, y)));
        }
        if (!size.Contains(tx, ty)) continue;
        temporal.emplace(offset + labels.at(x, y),
                         next_offset + next.at(tx, ty));
      }
    }
  }
  for (const auto& [a, b] : spatial) g.edges.push_back({a, b, false});
  for (const auto& [a, b] : temporal) g.edges.push_back({a, b, true});
  return g;
}

LabelMap GridSuperpixels(const FrameSize& size, int cell) {
  if (cell < 1) throw ValidationError("grid cell must be >= 1");
  const int cols = (size.width + cell - 1) / cell;
  LabelMap labels(size);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      labels.at(x, y) = (y / cell) * cols + x / cell;
    }
  }
  return labels;
}

}  // namespace trackcut
