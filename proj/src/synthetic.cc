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

#include "trackcut/synthetic.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include "trackcut/errors.h"
#include "trackcut/io.h"

namespace trackcut {

namespace fs = std::filesystem;

namespace {

// Distribution helpers with a fixed algorithm, so generated data does not
// depend on the standard library's distribution implementations.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  int Int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  double Normal() {
    const double u1 = 1.0 - Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

double Quantize(double v) {
  return std::round(std::min(1.0, std::max(0.0, v)) * 255.0) / 255.0;
}

FeatureVector RandomUnit(Random& rng, int dim) {
  FeatureVector f(static_cast<std::size_t>(dim));
  for (double& x : f) x = rng.Normal();
  NormalizeL2(f);
  return f;
}

BoundingBox ObjectBox(const SyntheticObject& o, int t, const FrameSize& size) {
  return o.start.Shifted(o.vx * t, o.vy * t, size);
}

BoundingBox JitteredBox(Random& rng, const BoundingBox& box, int jitter,
                        const FrameSize& size) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    const int x0 = std::max(0, box.x0() + rng.Int(-jitter, jitter));
    const int y0 = std::max(0, box.y0() + rng.Int(-jitter, jitter));
    const int x1 = std::min(size.width, box.x1() + rng.Int(-jitter, jitter));
    const int y1 = std::min(size.height, box.y1() + rng.Int(-jitter, jitter));
    if (x1 > x0 && y1 > y0) return BoundingBox(x0, y0, x1, y1);
  }
  return box;
}

BoundingBox RandomBox(Random& rng, const FrameSize& size, int min_side,
                      int max_side) {
  const int w = std::min(size.width, rng.Int(min_side, max_side));
  const int h = std::min(size.height, rng.Int(min_side, max_side));
  const int x0 = rng.Int(0, size.width - w);
  const int y0 = rng.Int(0, size.height - h);
  return BoundingBox(x0, y0, x0 + w, y0 + h);
}

}  // namespace

SyntheticVideo GenerateSynthetic(const SceneSpec& spec, std::uint64_t seed) {
  if (spec.frames < 1 || spec.objects.empty() || spec.feature_dim < 1 ||
      spec.true_proposals < 1 || spec.superpixel_cell < 1 ||
      !(spec.proposal_noise >= 0.0 && spec.proposal_noise < 1.0) ||
      !(spec.miss_rate >= 0.0 && spec.miss_rate <= 1.0) ||
      spec.jitter < 0 || !(spec.colour_noise >= 0.0) ||
      !(spec.decoy_share >= 0.0 && spec.decoy_share <= 1.0)) {
    throw ValidationError("synthetic: invalid scene description");
  }
  Random rng(seed);
  SyntheticVideo out;
  out.spec = spec;
  const FrameSize size = spec.size;

  std::map<std::string, int> class_ids;
  for (const SyntheticObject& o : spec.objects) {
    if (class_ids.emplace(o.class_name, static_cast<int>(out.classes.size()))
            .second) {
      out.classes.push_back(o.class_name);
    }
  }
  const std::size_t classes = out.classes.size();
  std::vector<FeatureVector> prototypes;
  for (std::size_t k = 0; k < classes; ++k) {
    prototypes.push_back(RandomUnit(rng, spec.feature_dim));
  }

  out.proposals.resize(classes);
  out.is_distractor.resize(classes);
  for (int t = 0; t < spec.frames; ++t) {
    RgbImage frame(size);
    LabelMap gt(size);
    DenseMap motion(size);
    DenseMap flow_u(size), flow_v(size);
    LabelMap region(size);  // object label, or -1 - decoy index
    for (int y = 0; y < size.height; ++y) {
      for (int x = 0; x < size.width; ++x) {
        Rgb c = spec.background;
        for (std::size_t d = 0; d < spec.decoys.size(); ++d) {
          const SyntheticObject& o = spec.decoys[d];
          const BoundingBox box = ObjectBox(o, t, size);
          if (x >= box.x0() && x < box.x1() && y >= box.y0() && y < box.y1()) {
            c = o.colour;
            region.at(x, y) = -1 - static_cast<int>(d);
            motion.at(x, y) = o.vx != 0 || o.vy != 0 ? 1.0 : 0.0;
            flow_u.at(x, y) = o.vx;
            flow_v.at(x, y) = o.vy;
          }
        }
        for (std::size_t i = 0; i < spec.objects.size(); ++i) {
          const SyntheticObject& o = spec.objects[i];
          const BoundingBox box = ObjectBox(o, t, size);
          if (x >= box.x0() && x < box.x1() && y >= box.y0() && y < box.y1()) {
            c = o.colour;
            gt.at(x, y) = class_ids[o.class_name] + 1;
            region.at(x, y) = gt.at(x, y);
            const bool moving = o.vx != 0 || o.vy != 0;
            motion.at(x, y) = moving ? 1.0 : 0.0;
            flow_u.at(x, y) = o.vx;
            flow_v.at(x, y) = o.vy;
          }
        }
        for (double& ch : c) ch = Quantize(ch + spec.colour_noise * rng.Normal());
        frame.at(x, y) = c;
      }
    }

    // Grid cells split along object and decoy boundaries.
    const int cells_x = (size.width + spec.superpixel_cell - 1) / spec.superpixel_cell;
    std::map<std::pair<int, int>, int> ids;
    LabelMap sp(size);
    for (int y = 0; y < size.height; ++y) {
      for (int x = 0; x < size.width; ++x) {
        const int cell = (y / spec.superpixel_cell) * cells_x +
                         x / spec.superpixel_cell;
        const auto key = std::make_pair(cell, region.at(x, y));
        const auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
        sp.at(x, y) = it->second;
      }
    }
    // Relabel in raster order of first appearance.
    std::vector<int> remap(ids.size(), -1);
    int next = 0;
    for (std::int32_t& v : sp.values()) {
      if (remap[v] < 0) remap[v] = next++;
      v = remap[v];
    }

    for (std::size_t i = 0; i < spec.objects.size(); ++i) {
      const SyntheticObject& o = spec.objects[i];
      const int k = class_ids[o.class_name];
      const BoundingBox truth = ObjectBox(o, t, size);
      const bool missed = rng.Bernoulli(spec.miss_rate);
      int made_true = 0;
      while (made_true < spec.true_proposals) {
        const bool distractor = rng.Bernoulli(spec.proposal_noise);
        BoundingBox box = truth;
        FeatureVector feature;
        double appearance = 0.0, confidence = 0.0;
        if (distractor) {
          if (!spec.decoys.empty() && rng.Bernoulli(spec.decoy_share)) {
            const int d = rng.Int(0, static_cast<int>(spec.decoys.size()) - 1);
            box = JitteredBox(rng, ObjectBox(spec.decoys[d], t, size), 1, size);
          } else {
            box = RandomBox(rng, size, 6, 16);
          }
          feature = RandomUnit(rng, spec.feature_dim);
          appearance = rng.Uniform(0.2, 0.8);
          confidence = rng.Uniform(0.3, 0.9);
        } else {
          if (made_true > 0) box = JitteredBox(rng, truth, spec.jitter, size);
          feature = prototypes[k];
          for (double& f : feature) {
            f += 0.1 * rng.Normal();
          }
          appearance = rng.Uniform(0.6, 1.0);
          confidence = rng.Uniform(0.6, 0.95);
          ++made_true;
          if (missed) continue;
        }
        out.proposals[k].push_back(MakeProposal(
            t, BinaryMask::FromBox(size, box), appearance, confidence,
            std::move(feature)));
        out.is_distractor[k].push_back(distractor);
      }
    }

    out.frames.push_back(std::move(frame));
    out.groundtruth.push_back(std::move(gt));
    out.motion.push_back(std::move(motion));
    out.superpixels.push_back(std::move(sp));
    if (t + 1 < spec.frames) {
      out.flows.push_back(FlowField{std::move(flow_u), std::move(flow_v)});
    }
  }
  return out;
}

fs::path WriteSynthetic(const SyntheticVideo& video, const fs::path& dir,
                        const std::string& video_id) {
  const SceneSpec& spec = video.spec;
  VideoManifest m;
  m.base_dir = dir;
  m.video_id = video_id;
  m.frame_count = spec.frames;
  m.size = spec.size;
  m.classes = video.classes;
  m.feature_dim = spec.feature_dim;
  m.frames = "frames/{t}.ppm";
  m.motion = "motion/{t}.fmap";
  m.flow_u = "flow/u_{t}.fmap";
  m.flow_v = "flow/v_{t}.fmap";
  if (spec.write_superpixels) m.superpixels = "superpixels/{t}.imap";
  m.groundtruth = "groundtruth/{t}.imap";
  for (int t = 0; t < spec.frames; ++t) m.groundtruth_frames.push_back(t);
  for (const std::string& c : video.classes) m.proposals.push_back(c + ".proposals");

  for (int t = 0; t < spec.frames; ++t) {
    io::WritePpm(m.Resolve(m.frames, t), video.frames[t]);
    io::WriteFmap(m.Resolve(m.motion, t), video.motion[t]);
    io::WriteImap(m.Resolve(m.groundtruth, t), video.groundtruth[t]);
    if (spec.write_superpixels) {
      io::WriteImap(m.Resolve(m.superpixels, t), video.superpixels[t]);
    }
  }
  for (std::size_t t = 0; t < video.flows.size(); ++t) {
    io::WriteFmap(m.Resolve(m.flow_u, static_cast<int>(t)), video.flows[t].u);
    io::WriteFmap(m.Resolve(m.flow_v, static_cast<int>(t)), video.flows[t].v);
  }
  for (std::size_t k = 0; k < video.classes.size(); ++k) {
    io::WriteProposals(m.ProposalPath(k), video.proposals[k], false);
  }
  const fs::path manifest_path = dir / "manifest.txt";
  io::WriteText(manifest_path, FormatManifest(m));
  return manifest_path;
}

}  // namespace trackcut
