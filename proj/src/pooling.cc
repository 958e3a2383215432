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

#include "trackcut/pooling.h"

#include <cmath>

#include "trackcut/errors.h"
#include "trackcut/kernels.h"

namespace trackcut {

DenseMap PoolFrame(const FrameSize& size,
                   std::span<const WeightedMask> items) {
  DenseMap out(size);
  double total = 0.0;
  for (const WeightedMask& item : items) {
    if (!(item.mask->size() == size)) {
      throw ValidationError("pooling: mask frame size mismatch");
    }
    if (!(item.confidence >= 0.0) || !std::isfinite(item.confidence)) {
      throw ValidationError("pooling: confidence must be finite and >= 0");
    }
  }
  std::span<double> values = out.values();
  // Accumulating in item order makes a pixel covered by every item sum to
  // exactly `total`, so it divides to exactly 1.
  for (const WeightedMask& item : items) {
    if (item.confidence == 0.0) continue;
    total += item.confidence;
    for (const Run& r : item.mask->runs()) {
      kernels::AddConstant(values.subspan(r.start, r.length), item.confidence);
    }
  }
  if (total <= 0.0) return DenseMap(size);
  kernels::Divide(values, total);
  return out;
}

std::vector<PooledFrame> PoolTracks(std::span<const Track> tracks,
                                    int frame_count, const FrameSize& size) {
  std::vector<std::vector<WeightedMask>> per_frame(
      static_cast<std::size_t>(std::max(frame_count, 0)));
  for (const Track& track : tracks) {
    for (const TrackEntry& entry : track.entries) {
      if (entry.frame_index < 0 || entry.frame_index >= frame_count) {
        throw ValidationError("track entry outside video frame range");
      }
      for (const RegeneratedProposal& p : entry.absorbed) {
        per_frame[entry.frame_index].push_back({&p.mask, p.confidence});
      }
    }
  }
  std::vector<PooledFrame> out;
  out.reserve(per_frame.size());
  for (int t = 0; t < frame_count; ++t) {
    out.push_back({t, PoolFrame(size, per_frame[t])});
  }
  return out;
}

int ValidateSuperpixels(const LabelMap& labels) {
  const std::int32_t max_label = labels.MaxLabel();
  std::vector<std::uint8_t> used(static_cast<std::size_t>(max_label) + 1, 0);
  for (std::int32_t l : labels.values()) {
    if (l < 0) throw ValidationError("negative superpixel label");
    used[l] = 1;
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) {
      throw ValidationError("superpixel " + std::to_string(i) +
                            " has no pixels");
    }
  }
  return max_label + 1;
}

std::vector<double> ReduceToSuperpixels(const DenseMap& map,
                                        const LabelMap& superpixels) {
  if (!(map.size() == superpixels.size())) {
    throw ValidationError("superpixel map and confidence map sizes differ");
  }
  const int count = ValidateSuperpixels(superpixels);
  std::vector<double> sums(count, 0.0);
  std::vector<long long> areas(count, 0);
  const auto values = map.values();
  const auto labels = superpixels.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    sums[labels[i]] += values[i];
    ++areas[labels[i]];
  }
  for (int s = 0; s < count; ++s) sums[s] /= static_cast<double>(areas[s]);
  return sums;
}

}  // namespace trackcut
