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

#include "trackcut/proposal.h"

#include <cmath>

#include "trackcut/errors.h"
#include "trackcut/kernels.h"

namespace trackcut {

void NormalizeL2(FeatureVector& v) {
  const double norm = std::sqrt(kernels::Dot(v, v));
  // Already-unit vectors are left alone so a write/read cycle is exact.
  if (norm > 0.0 && std::abs(norm - 1.0) > 1e-12) kernels::Divide(v, norm);
}

RegionProposal MakeProposal(int frame_index, BinaryMask mask,
                            double appearance_score,
                            double classifier_confidence,
                            FeatureVector feature) {
  if (frame_index < 0) throw ValidationError("negative frame index");
  auto box = mask.TightBox();
  if (!box) throw ValidationError("empty proposal");
  if (!(classifier_confidence >= 0.0 && classifier_confidence <= 1.0)) {
    throw ValidationError("classifier confidence outside [0,1]");
  }
  if (!std::isfinite(appearance_score)) {
    throw ValidationError("appearance score not finite");
  }
  for (double f : feature) {
    if (!std::isfinite(f)) throw ValidationError("feature value not finite");
  }
  NormalizeL2(feature);
  return RegionProposal{.frame_index = frame_index,
                        .mask = std::move(mask),
                        .box = *box,
                        .appearance_score = appearance_score,
                        .classifier_confidence = classifier_confidence,
                        .feature = std::move(feature)};
}

}  // namespace trackcut
