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

#ifndef TRACKCUT_SYNTHETIC_H_
#define TRACKCUT_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trackcut/dense_map.h"
#include "trackcut/geometry.h"
#include "trackcut/manifest.h"
#include "trackcut/proposal.h"

namespace trackcut {

// A moving rectangle. Objects carry a class; decoys ignore it.
struct SyntheticObject {
  std::string class_name = "object";
  BoundingBox start{8, 24, 24, 40};
  int vx = 2;
  int vy = 0;
  Rgb colour{0.85, 0.2, 0.15};
};

// Scene description for generated test videos.
struct SceneSpec {
  FrameSize size{64, 64};
  int frames = 10;
  std::vector<SyntheticObject> objects{SyntheticObject{}};
  Rgb background{0.25, 0.45, 0.3};
  double colour_noise = 0.02;  // per-channel Gaussian pixel noise
  // Chance that a generated proposal is a distractor.
  double proposal_noise = 0.3;
  int true_proposals = 4;  // per object and frame
  // Chance that the detector misses an object on a frame: its true
  // proposals are dropped while distractors are still emitted.
  double miss_rate = 0.0;
  int jitter = 2;          // max per-side offset of jittered true boxes
  // Unannotated look-alikes that distractor proposals tend to land on.
  std::vector<SyntheticObject> decoys{
      SyntheticObject{"", BoundingBox(44, 2, 56, 14), 0, 1, {0.85, 0.2, 0.15}}};
  double decoy_share = 1.0;  // share of distractors placed on a decoy
  int feature_dim = 32;
  int superpixel_cell = 8;
  bool write_superpixels = true;
};

struct SyntheticVideo {
  SceneSpec spec;
  std::vector<std::string> classes;
  std::vector<RgbImage> frames;
  std::vector<LabelMap> groundtruth;
  std::vector<DenseMap> motion;
  std::vector<FlowField> flows;
  std::vector<LabelMap> superpixels;
  std::vector<std::vector<RegionProposal>> proposals;  // per class
  std::vector<std::vector<bool>> is_distractor;        // aligned with proposals
};

SyntheticVideo GenerateSynthetic(const SceneSpec& spec, std::uint64_t seed);

// Writes the video under `dir` and returns the manifest path.
std::filesystem::path WriteSynthetic(const SyntheticVideo& video,
                                     const std::filesystem::path& dir,
                                     const std::string& video_id);

}  // namespace trackcut

#endif  // TRACKCUT_SYNTHETIC_H_
