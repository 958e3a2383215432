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

#ifndef TRACKCUT_PROPOSAL_H_
#define TRACKCUT_PROPOSAL_H_

#include <vector>

#include "trackcut/binary_mask.h"
#include "trackcut/geometry.h"

namespace trackcut {

using FeatureVector = std::vector<double>;

// One candidate object region on one frame together with its scores.
// `box` is always the tight box of `mask`; use MakeProposal to build one.
struct RegionProposal {
  int frame_index = 0;
  BinaryMask mask;
  BoundingBox box;
  double appearance_score = 0.0;
  double motion_score = 0.0;
  double combined_score = 0.0;
  double classifier_confidence = 0.0;
  double rescored = 0.0;
  FeatureVector feature;
};

// Validates the mask (non-empty) and confidence (in [0,1]), derives the tight
// box, and L2-normalises a non-zero feature.
RegionProposal MakeProposal(int frame_index, BinaryMask mask,
                            double appearance_score,
                            double classifier_confidence,
                            FeatureVector feature);

// Scales v to unit length unless it is all zeros.
void NormalizeL2(FeatureVector& v);

}  // namespace trackcut

#endif  // TRACKCUT_PROPOSAL_H_
