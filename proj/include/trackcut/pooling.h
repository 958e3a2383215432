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

#ifndef TRACKCUT_POOLING_H_
#define TRACKCUT_POOLING_H_

#include <span>
#include <vector>

#include "trackcut/binary_mask.h"
#include "trackcut/dense_map.h"
#include "trackcut/mining.h"

namespace trackcut {

struct WeightedMask {
  const BinaryMask* mask;
  double confidence;
};

struct PooledFrame {
  int frame_index = 0;
  DenseMap map;
};

// Weighted spatial average pooling over one frame:
//   value(p) = sum_{i : p in mask_i} c_i / sum_i c_i.
// The denominator is global to the frame. No proposals, or all-zero
// confidences, give the all-zero map.
DenseMap PoolFrame(const FrameSize& size, std::span<const WeightedMask> items);

// PoolFrame over the absorbed proposals of `tracks` on every frame in
// [0, frame_count), weighted by their regeneration confidence.
std::vector<PooledFrame> PoolTracks(std::span<const Track> tracks,
                                    int frame_count, const FrameSize& size);

// Number of superpixels in a label map whose labels must be exactly
// 0..S-1 with every label used.
int ValidateSuperpixels(const LabelMap& labels);

// Mean of `map` over each superpixel.
std::vector<double> ReduceToSuperpixels(const DenseMap& map,
                                        const LabelMap& superpixels);

}  // namespace trackcut

#endif  // TRACKCUT_POOLING_H_
