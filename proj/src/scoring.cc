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

#include "trackcut/scoring.h"

#include <algorithm>

#include "trackcut/errors.h"
#include "trackcut/kernels.h"

namespace trackcut {

double MotionScore(const BinaryMask& mask, const DenseMap& motion) {
  if (!(mask.size() == motion.size())) {
    throw ValidationError("motion map and mask sizes differ");
  }
  const long long area = mask.Area();
  if (area == 0) throw ValidationError("empty proposal");
  const std::span<const double> values = motion.values();
  double total = 0.0;
  for (const Run& r : mask.runs()) {
    total += kernels::Sum(values.subspan(r.start, r.length));
  }
  return (total / static_cast<double>(area)) * total;
}

void NormalizeScores(std::span<double> scores, const ScoringConfig& cfg) {
  if (scores.empty()) return;
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  switch (cfg.normalization) {
    case Normalization::kPerFrameMax:
      if (hi <= 0.0) {
        std::fill(scores.begin(), scores.end(), 0.0);
        return;
      }
      for (double& v : scores) v = std::max(0.0, v / hi);
      return;
    case Normalization::kPerFrameMinMax:
      if (hi - lo <= cfg.epsilon) {
        std::fill(scores.begin(), scores.end(), hi == 0.0 ? 0.0 : 1.0);
        return;
      }
      for (double& v : scores) v = (v - lo) / (hi - lo);
      return;
  }
}

void CombineScores(std::span<RegionProposal> frame_proposals,
                   const ScoringConfig& cfg) {
  if (frame_proposals.empty()) return;
  const int frame = frame_proposals.front().frame_index;
  const std::size_t n = frame_proposals.size();
  std::vector<double> appearance(n), motion(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (frame_proposals[i].frame_index != frame) {
      throw ValidationError("CombineScores: proposals span several frames");
    }
    appearance[i] = frame_proposals[i].appearance_score;
    motion[i] = frame_proposals[i].motion_score;
  }
  NormalizeScores(appearance, cfg);
  NormalizeScores(motion, cfg);
  std::vector<double> combined(n);
  for (std::size_t i = 0; i < n; ++i) combined[i] = appearance[i] + motion[i];
  NormalizeScores(combined, cfg);
  for (std::size_t i = 0; i < n; ++i) {
    frame_proposals[i].combined_score = combined[i];
  }
}

double Rescore(RegionProposal& proposal) {
  proposal.rescored = proposal.combined_score * proposal.classifier_confidence;
  return proposal.rescored;
}

void ScoreProposals(std::vector<RegionProposal>& proposals,
                    std::span<const DenseMap> motion,
                    const ScoringConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  for (RegionProposal& p : proposals) {
    if (p.frame_index < 0 ||
        static_cast<std::size_t>(p.frame_index) >= motion.size()) {
      throw ValidationError("proposal frame " + std::to_string(p.frame_index) +
                            " has no motion map");
    }
    p.motion_score = MotionScore(p.mask, motion[p.frame_index]);
  }
  // Group by frame while keeping the input order inside each group.
  std::stable_sort(proposals.begin(), proposals.end(),
                   [](const RegionProposal& a, const RegionProposal& b) {
                     return a.frame_index < b.frame_index;
                   });
  auto it = proposals.begin();
  while (it != proposals.end()) {
    auto end = std::find_if(it, proposals.end(), [&](const RegionProposal& p) {
      return p.frame_index != it->frame_index;
    });
    CombineScores(std::span<RegionProposal>(&*it, end - it), cfg);
    it = end;
  }
  for (RegionProposal& p : proposals) Rescore(p);
}

}  // namespace trackcut
