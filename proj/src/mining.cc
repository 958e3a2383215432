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

#include "trackcut/mining.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "trackcut/errors.h"
#include "trackcut/kernels.h"

namespace trackcut {

namespace {

using RunKey = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

RunKey KeyOf(const BinaryMask& mask) {
  RunKey key;
  key.reserve(mask.runs().size());
  for (const Run& r : mask.runs()) key.emplace_back(r.start, r.length);
  return key;
}

// Connected components of the set pixels, seeded in raster order. Each
// component is returned as a sorted list of pixel indices.
std::vector<std::vector<std::uint32_t>> Components(
    const std::vector<std::uint8_t>& binary, const FrameSize& size,
    Connectivity connectivity) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint8_t> seen(binary.size(), 0);
  std::vector<std::uint32_t> stack;
  const int w = size.width;
  const int h = size.height;
  for (std::uint32_t start = 0; start < binary.size(); ++start) {
    if (!binary[start] || seen[start]) continue;
    std::vector<std::uint32_t> pixels;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::uint32_t p = stack.back();
      stack.pop_back();
      pixels.push_back(p);
      const int x = static_cast<int>(p % w);
      const int y = static_cast<int>(p / w);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (connectivity == Connectivity::kFour && dx != 0 && dy != 0) {
            continue;
          }
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto q = static_cast<std::uint32_t>(size.Index(nx, ny));
          if (binary[q] && !seen[q]) {
            seen[q] = 1;
            stack.push_back(q);
          }
        }
      }
    }
    std::sort(pixels.begin(), pixels.end());
    out.push_back(std::move(pixels));
  }
  return out;
}

BinaryMask MaskFromSortedPixels(const FrameSize& size,
                                const std::vector<std::uint32_t>& pixels) {
  std::vector<Run> runs;
  for (std::uint32_t p : pixels) {
    if (!runs.empty() && runs.back().end() == p) {
      ++runs.back().length;
    } else {
      runs.push_back({p, 1});
    }
  }
  return BinaryMask::FromRuns(size, std::move(runs));
}

double MeanOver(const BinaryMask& mask, std::span<const double> values) {
  double total = 0.0;
  for (const Run& r : mask.runs()) {
    total += kernels::Sum(values.subspan(r.start, r.length));
  }
  return total / static_cast<double>(mask.Area());
}

double Median(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

std::vector<double> MiningConfig::Thresholds() const {
  std::vector<double> t;
  for (int k = 1; k <= levels; ++k) {
    t.push_back(static_cast<double>(k) / static_cast<double>(levels + 1));
  }
  return t;
}

void MiningConfig::Validate() const {
  if (levels < 1) throw ValidationError("mining levels must be >= 1");
  if (!(iou_absorb > 0.0 && iou_absorb <= 1.0)) {
    throw ValidationError("iou_absorb must lie in (0,1]");
  }
  if (min_region_area < 1) throw ValidationError("min_region_area must be >= 1");
}

std::size_t Track::ProposalCount() const {
  std::size_t n = 0;
  for (const TrackEntry& e : entries) n += e.absorbed.size();
  return n;
}

FlowShiftTracker::FlowShiftTracker(std::vector<FlowField> flows)
    : flows_(std::move(flows)) {
  for (const FlowField& f : flows_) {
    if (!(f.u.size() == f.v.size())) {
      throw ValidationError("flow u and v sizes differ");
    }
  }
}

BoundingBox FlowShiftTracker::Predict(int frame, const BoundingBox& box,
                                      const FrameSize& size) const {
  if (frame < 0 || static_cast<std::size_t>(frame) >= flows_.size()) {
    return box;
  }
  const FlowField& flow = flows_[frame];
  if (!(flow.u.size() == size)) {
    throw ValidationError("flow field size does not match frame size");
  }
  const BoundingBox b = box.ClampedTo(size);
  std::vector<double> us, vs;
  us.reserve(static_cast<std::size_t>(b.Area()));
  vs.reserve(static_cast<std::size_t>(b.Area()));
  for (int y = b.y0(); y < b.y1(); ++y) {
    for (int x = b.x0(); x < b.x1(); ++x) {
      us.push_back(flow.u.at(x, y));
      vs.push_back(flow.v.at(x, y));
    }
  }
  const auto dx = static_cast<int>(std::lround(Median(us)));
  const auto dy = static_cast<int>(std::lround(Median(vs)));
  return box.Shifted(dx, dy, size);
}

std::vector<RegeneratedProposal> Regenerate(const DenseMap& map,
                                            int frame_index,
                                            const MiningConfig& cfg,
                                            std::size_t first_id) {
  cfg.Validate();
  const FrameSize& size = map.size();
  std::vector<RegeneratedProposal> out;
  std::set<RunKey> seen;
  std::vector<std::uint8_t> binary(size.pixels());
  for (double level : cfg.Thresholds()) {
    if (kernels::ThresholdGe(map.values(), level, binary) == 0) continue;
    for (const auto& pixels : Components(binary, size, cfg.connectivity)) {
      if (pixels.size() < static_cast<std::size_t>(cfg.min_region_area)) {
        continue;
      }
      BinaryMask mask = MaskFromSortedPixels(size, pixels);
      if (!seen.insert(KeyOf(mask)).second) continue;
      const double confidence = MeanOver(mask, map.values());
      const BoundingBox box = *mask.TightBox();
      out.push_back(RegeneratedProposal{.id = first_id + out.size(),
                                        .frame_index = frame_index,
                                        .mask = std::move(mask),
                                        .box = box,
                                        .confidence = confidence,
                                        .source_level = level,
                                        .feature = {}});
    }
  }
  return out;
}

void InheritFeatures(std::span<RegeneratedProposal> regenerated,
                     std::span<const RegionProposal> sources,
                     std::size_t dim) {
  for (RegeneratedProposal& r : regenerated) {
    long long best_overlap = 0;
    const RegionProposal* best = nullptr;
    for (const RegionProposal& s : sources) {
      if (s.frame_index != r.frame_index) continue;
      const long long overlap = r.mask.IntersectionArea(s.mask);
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = &s;
      }
    }
    if (best) {
      if (best->feature.size() != dim) {
        throw ValidationError("feature dimensionality mismatch");
      }
      r.feature = best->feature;
    } else {
      r.feature.assign(dim, 0.0);
    }
  }
}

MiningResult MineTracks(std::span<const RegeneratedProposal> proposals,
                        const Tracker& tracker, const MiningConfig& cfg,
                        int frame_count, const FrameSize& size) {
  cfg.Validate();
  MiningResult result;
  if (proposals.empty()) return result;

  std::vector<std::vector<std::size_t>> by_frame(
      static_cast<std::size_t>(std::max(frame_count, 0)));
  const std::size_t dim = proposals.front().feature.size();
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const RegeneratedProposal& p = proposals[i];
    if (p.frame_index < 0 || p.frame_index >= frame_count) {
      throw ValidationError("proposal frame index outside video");
    }
    if (p.feature.size() != dim) {
      throw ValidationError("feature dimensionality mismatch");
    }
    by_frame[p.frame_index].push_back(i);
  }

  std::vector<std::uint8_t> in_pool(proposals.size(), 1);
  std::size_t remaining = proposals.size();
  std::mt19937_64 rng(cfg.rng_seed);
  int earliest = 0;

  while (remaining > 0) {
    std::vector<std::size_t> candidates;
    while (candidates.empty()) {
      for (std::size_t i : by_frame[earliest]) {
        if (in_pool[i]) candidates.push_back(i);
      }
      if (candidates.empty()) ++earliest;
    }
    // Modulo pick keeps the draw identical across standard libraries.
    const std::size_t seed_index = candidates[rng() % candidates.size()];

    Track track;
    BoundingBox box = proposals[seed_index].box;
    for (int t = earliest; t < frame_count; ++t) {
      if (t > earliest) box = tracker.Predict(t - 1, box, size);
      TrackEntry entry{.frame_index = t, .box = box, .absorbed = {}};
      for (std::size_t i : by_frame[t]) {
        if (in_pool[i] && Iou(proposals[i].box, box) >= cfg.iou_absorb) {
          in_pool[i] = 0;
          --remaining;
          entry.absorbed.push_back(proposals[i]);
        }
      }
      track.entries.push_back(std::move(entry));
    }
    while (!track.entries.empty() && track.entries.back().absorbed.empty()) {
      track.entries.pop_back();
    }

    if (track.entries.size() < 2) {
      for (const RegeneratedProposal& p : track.entries.front().absorbed) {
        result.discarded.push_back(p.id);
      }
      continue;
    }

    track.feature.assign(dim, 0.0);
    double conf_sum = 0.0;
    const std::size_t count = track.ProposalCount();
    for (const TrackEntry& e : track.entries) {
      for (const RegeneratedProposal& p : e.absorbed) {
        for (std::size_t d = 0; d < dim; ++d) track.feature[d] += p.feature[d];
        conf_sum += p.confidence;
      }
    }
    for (double& f : track.feature) f /= static_cast<double>(count);
    track.phi = conf_sum / static_cast<double>(count);
    track.id = result.tracks.size();
    result.tracks.push_back(std::move(track));
  }
  return result;
}

}  // namespace trackcut
