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

#ifndef TRACKCUT_CONFIG_H_
#define TRACKCUT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "trackcut/energy.h"
#include "trackcut/mining.h"
#include "trackcut/scoring.h"

namespace trackcut {

// Which per-proposal confidence weights the frame pooling.
enum class PoolWeight { kRescored, kClassifier };

enum class TrackerKind { kFlow, kStationary };

// Every tunable of the pipeline. FormatConfig lists each key with its
// default; a config file only needs the keys it changes.
struct PipelineConfig {
  ScoringConfig scoring;
  PoolWeight pool_weight = PoolWeight::kRescored;
  MiningConfig mining;
  TrackerKind tracker = TrackerKind::kFlow;
  double delta = 0.6;
  double lambda = 1.0;
  std::size_t budget = 0;  // 0 = number of tracks
  bool lazy_greedy = true;
  SegmentationOptions segment;
  int grid_cell = 8;  // superpixel block size when the manifest has none

  void Validate() const;
};

PipelineConfig ParseConfig(const std::string& text, const std::string& origin);
PipelineConfig LoadConfig(const std::filesystem::path& path);
std::string FormatConfig(const PipelineConfig& cfg);

// TRACKCUT_SEED, when set, replaces the mining and GMM seeds.
void ApplySeedOverride(PipelineConfig& cfg);

}  // namespace trackcut

#endif  // TRACKCUT_CONFIG_H_
