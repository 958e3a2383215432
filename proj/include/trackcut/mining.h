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

#ifndef TRACKCUT_MINING_H_
#define TRACKCUT_MINING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trackcut/binary_mask.h"
#include "trackcut/dense_map.h"
#include "trackcut/geometry.h"
#include "trackcut/proposal.h"

namespace trackcut {

enum class Connectivity { kFour, kEight };

struct MiningConfig {
  int levels = 10;
  Connectivity connectivity = Connectivity::kEight;
  double iou_absorb = 0.5;
  std::uint64_t rng_seed = 0;
  int min_region_area = 9;

  // k / (levels + 1) for k = 1..levels.
  std::vector<double> Thresholds() const;
  void Validate() const;
};

// A connected superlevel-set component of a pooled confidence map.
struct RegeneratedProposal {
  std::size_t id = 0;  // position in the video-wide proposal list
  int frame_index = 0;
  BinaryMask mask;
  BoundingBox box;
  double confidence = 0.0;  // mean of the confidence map over the mask
  double source_level = 0.0;
  FeatureVector feature;
};

struct TrackEntry {
  int frame_index = 0;
  BoundingBox box;  // tracked box on this frame
  std::vector<RegeneratedProposal> absorbed;
};

// Entries cover a contiguous frame span from the seed frame to the last
// frame on which anything was absorbed; intermediate entries may be empty.
struct Track {
  std::size_t id = 0;
  std::vector<TrackEntry> entries;
  FeatureVector feature;  // mean of constituent features
  double phi = 0.0;       // mean constituent confidence

  std::size_t ProposalCount() const;
  int FirstFrame() const { return entries.front().frame_index; }
  int LastFrame() const { return entries.back().frame_index; }
};

struct MiningResult {
  std::vector<Track> tracks;
  // Ids of proposals whose track only ever absorbed on its seed frame.
  std::vector<std::size_t> discarded;
};

// Predicts where a box on frame t lands on frame t+1.
class Tracker {
 public:
  virtual ~Tracker() = default;
  virtual BoundingBox Predict(int frame, const BoundingBox& box,
                              const FrameSize& size) const = 0;
};

class StationaryTracker : public Tracker {
 public:
  BoundingBox Predict(int, const BoundingBox& box,
                      const FrameSize&) const override {
    return box;
  }
};

// Translates the box by the rounded component-wise median of the flow over
// its pixels. flows[t] maps frame t to t+1; transitions without a flow field
// keep the box in place.
class FlowShiftTracker : public Tracker {
 public:
  explicit FlowShiftTracker(std::vector<FlowField> flows);

  BoundingBox Predict(int frame, const BoundingBox& box,
                      const FrameSize& size) const override;

 private:
  std::vector<FlowField> flows_;
};

// Threshold sweep over `map`; components deduplicated across levels keeping
// the lowest level. Ids are assigned sequentially from `first_id`.
std::vector<RegeneratedProposal> Regenerate(const DenseMap& map,
                                            int frame_index,
                                            const MiningConfig& cfg,
                                            std::size_t first_id = 0);

// Gives each regenerated proposal the feature of the source proposal (same
// frame) whose mask it overlaps most; ties go to the earlier source. With
// no overlap the feature is a zero vector of `dim` entries.
void InheritFeatures(std::span<RegeneratedProposal> regenerated,
                     std::span<const RegionProposal> sources, std::size_t dim);

// Iterative tracking and eliminating over the candidate pool. `frame_count`
// bounds how far each seed is tracked.
MiningResult MineTracks(std::span<const RegeneratedProposal> proposals,
                        const Tracker& tracker, const MiningConfig& cfg,
                        int frame_count, const FrameSize& size);

}  // namespace trackcut

#endif  // TRACKCUT_MINING_H_
