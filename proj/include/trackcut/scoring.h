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

#ifndef TRACKCUT_SCORING_H_
#define TRACKCUT_SCORING_H_

#include <span>
#include <vector>

#include "trackcut/binary_mask.h"
#include "trackcut/dense_map.h"
#include "trackcut/proposal.h"

namespace trackcut {

enum class Normalization { kPerFrameMax, kPerFrameMinMax };

struct ScoringConfig {
  Normalization normalization = Normalization::kPerFrameMax;
  double epsilon = 1e-12;
};

// mean(M over mask) * sum(M over mask). Throws on an empty mask or a size
// mismatch.
double MotionScore(const BinaryMask& mask, const DenseMap& motion);

// Rescales `scores` in place into [0,1] following `cfg`.
//   per-frame max:  v / max, negatives clamped to 0; all-zero stays zero.
//   per-frame minmax: (v - min) / (max - min); a tie maps to 1 (or to 0 when
//   the tied value is 0).
void NormalizeScores(std::span<double> scores, const ScoringConfig& cfg);

// Normalises appearance and motion per frame, sums them into the combined
// score and normalises that too. All proposals must share one frame.
void CombineScores(std::span<RegionProposal> frame_proposals,
                   const ScoringConfig& cfg);

// combined * classifier confidence; also stored into `proposal.rescored`.
double Rescore(RegionProposal& proposal);

// Full scoring pass over a video: motion score, per-frame combination and
// rescoring. `motion` is indexed by frame.
void ScoreProposals(std::vector<RegionProposal>& proposals,
                    std::span<const DenseMap> motion,
                    const ScoringConfig& cfg);

}  // namespace trackcut

#endif  // TRACKCUT_SCORING_H_
