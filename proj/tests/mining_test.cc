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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "trackcut/errors.h"
#include "trackcut/mining.h"

namespace trackcut {
namespace {

RegeneratedProposal Regen(std::size_t id, int frame, const FrameSize& size,
                          const BoundingBox& box, double c = 0.8,
                          FeatureVector f = {1.0, 0.0}) {
  return RegeneratedProposal{.id = id,
                             .frame_index = frame,
                             .mask = BinaryMask::FromBox(size, box),
                             .box = box,
                             .confidence = c,
                             .source_level = 0.5,
                             .feature = std::move(f)};
}

DenseMap Plateau(const FrameSize& size, const BoundingBox& box, double v,
                 DenseMap map) {
  for (int y = box.y0(); y < box.y1(); ++y) {
    for (int x = box.x0(); x < box.x1(); ++x) map.at(x, y) = v;
  }
  return map;
}

TEST(RegenerateTest, SinglePlateau) {
  const FrameSize size(8, 8);
  const DenseMap map = Plateau(size, BoundingBox(2, 2, 5, 5), 0.9, DenseMap(size));
  MiningConfig cfg;
  cfg.levels = 9;
  const auto out = Regenerate(map, 3, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].frame_index, 3);
  EXPECT_EQ(out[0].mask, BinaryMask::FromBox(size, BoundingBox(2, 2, 5, 5)));
  EXPECT_EQ(out[0].box, BoundingBox(2, 2, 5, 5));
  EXPECT_DOUBLE_EQ(out[0].confidence, 0.9);
}

TEST(RegenerateTest, LevelSelectsPlateaus) {
  const FrameSize size(12, 6);
  DenseMap map = Plateau(size, BoundingBox(0, 0, 4, 4), 0.8, DenseMap(size));
  map = Plateau(size, BoundingBox(7, 0, 11, 4), 0.3, map);
  MiningConfig cfg;
  cfg.levels = 1;  // threshold 0.5
  auto out = Regenerate(map, 0, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].box, BoundingBox(0, 0, 4, 4));

  cfg.levels = 4;  // thresholds 0.2, 0.4, 0.6, 0.8
  out = Regenerate(map, 0, cfg);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].box, BoundingBox(0, 0, 4, 4));
  EXPECT_EQ(out[1].box, BoundingBox(7, 0, 11, 4));
  EXPECT_DOUBLE_EQ(out[0].source_level, 0.2);
}

TEST(RegenerateTest, ZeroMapIsEmpty) {
  EXPECT_TRUE(Regenerate(DenseMap(FrameSize(10, 10)), 0, MiningConfig{}).empty());
}

TEST(RegenerateTest, ConnectivityAndMinArea) {
  // Two 3x3 blocks touching diagonally.
  const FrameSize size(6, 6);
  DenseMap map = Plateau(size, BoundingBox(0, 0, 3, 3), 1.0, DenseMap(size));
  map = Plateau(size, BoundingBox(3, 3, 6, 6), 1.0, map);
  MiningConfig cfg;
  cfg.connectivity = Connectivity::kEight;
  EXPECT_EQ(Regenerate(map, 0, cfg).size(), 1u);
  cfg.connectivity = Connectivity::kFour;
  EXPECT_EQ(Regenerate(map, 0, cfg).size(), 2u);
  cfg.min_region_area = 10;
  EXPECT_TRUE(Regenerate(map, 0, cfg).empty());
}

TEST(RegenerateTest, IdsContinueFromOffset) {
  const FrameSize size(8, 8);
  const DenseMap map = Plateau(size, BoundingBox(0, 0, 4, 4), 0.7, DenseMap(size));
  const auto out = Regenerate(map, 0, MiningConfig{}, 17);
  ASSERT_FALSE(out.empty());
  EXPECT_EQ(out[0].id, 17u);
}

TEST(RegenerateTest, SuperlevelSetsNest) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FrameSize size(16, 12);
  MiningConfig cfg;
  cfg.min_region_area = 1;
  for (int trial = 0; trial < 30; ++trial) {
    DenseMap map(size);
    // Smooth-ish random field: sum of a few bumps.
    for (int b = 0; b < 4; ++b) {
      const double cx = u(rng) * 16, cy = u(rng) * 12, h = u(rng);
      for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 16; ++x) {
          map.at(x, y) = std::min(
              1.0, map.at(x, y) +
                       h * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / 8.0));
        }
      }
    }
    const auto out = Regenerate(map, 0, cfg);
    for (const auto& hi : out) {
      bool nested = false;
      for (const auto& lo : out) {
        if (lo.source_level < hi.source_level &&
            lo.mask.IntersectionArea(hi.mask) == hi.mask.Area()) {
          nested = true;
        }
      }
      if (hi.source_level > cfg.Thresholds().front()) EXPECT_TRUE(nested);
    }
  }
}

TEST(MiningConfigTest, Thresholds) {
  MiningConfig cfg;
  EXPECT_EQ(cfg.Thresholds().size(), 10u);
  EXPECT_DOUBLE_EQ(cfg.Thresholds().front(), 1.0 / 11.0);
  cfg.levels = 0;
  EXPECT_THROW(cfg.Validate(), ValidationError);
  cfg.levels = 3;
  cfg.iou_absorb = 0.0;
  EXPECT_THROW(cfg.Validate(), ValidationError);
}

TEST(MineTracksTest, StationaryChain) {
  const FrameSize size(16, 16);
  const BoundingBox box(4, 4, 10, 10);
  const std::vector<RegeneratedProposal> props{Regen(0, 0, size, box),
                                               Regen(1, 1, size, box),
                                               Regen(2, 2, size, box)};
  const auto result = MineTracks(props, StationaryTracker{}, MiningConfig{}, 3, size);
  ASSERT_EQ(result.tracks.size(), 1u);
  EXPECT_TRUE(result.discarded.empty());
  const Track& t = result.tracks[0];
  EXPECT_EQ(t.entries.size(), 3u);
  EXPECT_EQ(t.ProposalCount(), 3u);
  EXPECT_EQ(t.FirstFrame(), 0);
  EXPECT_EQ(t.LastFrame(), 2);
  EXPECT_DOUBLE_EQ(t.phi, 0.8);
}

TEST(MineTracksTest, IsolatedProposalDiscarded) {
  const FrameSize size(16, 16);
  const std::vector<RegeneratedProposal> props{
      Regen(0, 1, size, BoundingBox(2, 2, 6, 6))};
  const auto result = MineTracks(props, StationaryTracker{}, MiningConfig{}, 3, size);
  EXPECT_TRUE(result.tracks.empty());
  EXPECT_EQ(result.discarded, std::vector<std::size_t>{0});
}

TEST(MineTracksTest, TwoCorners) {
  const FrameSize size(32, 32);
  std::vector<RegeneratedProposal> props;
  for (int t = 0; t < 4; ++t) {
    props.push_back(Regen(props.size(), t, size, BoundingBox(0, 0, 6, 6)));
    props.push_back(Regen(props.size(), t, size, BoundingBox(26, 26, 32, 32)));
  }
  const auto result = MineTracks(props, StationaryTracker{}, MiningConfig{}, 4, size);
  ASSERT_EQ(result.tracks.size(), 2u);
  for (const Track& t : result.tracks) {
    EXPECT_EQ(t.entries.size(), 4u);
    EXPECT_EQ(t.ProposalCount(), 4u);
    const BoundingBox first = t.entries.front().absorbed.front().box;
    for (const auto& e : t.entries) EXPECT_EQ(e.absorbed.front().box, first);
  }
}

TEST(MineTracksTest, TrackFeatureIsMeanOfMembers) {
  const FrameSize size(16, 16);
  const BoundingBox box(0, 0, 8, 8);
  const std::vector<RegeneratedProposal> props{
      Regen(0, 0, size, box, 0.4, {1.0, 0.0}),
      Regen(1, 1, size, box, 0.8, {0.0, 1.0})};
  const auto result = MineTracks(props, StationaryTracker{}, MiningConfig{}, 2, size);
  ASSERT_EQ(result.tracks.size(), 1u);
  EXPECT_DOUBLE_EQ(result.tracks[0].feature[0], 0.5);
  EXPECT_DOUBLE_EQ(result.tracks[0].feature[1], 0.5);
  EXPECT_DOUBLE_EQ(result.tracks[0].phi, 0.6);
}

TEST(MineTracksTest, FlowTrackerFollowsMotion) {
  const FrameSize size(32, 16);
  std::vector<FlowField> flows;
  for (int t = 0; t < 3; ++t) {
    flows.push_back(FlowField{DenseMap(size, 4.0), DenseMap(size, 0.0)});
  }
  std::vector<RegeneratedProposal> props;
  for (int t = 0; t < 4; ++t) {
    props.push_back(Regen(t, t, size, BoundingBox(4 * t, 4, 4 * t + 6, 10)));
  }
  const FlowShiftTracker tracker(flows);
  auto result = MineTracks(props, tracker, MiningConfig{}, 4, size);
  ASSERT_EQ(result.tracks.size(), 1u);
  EXPECT_EQ(result.tracks[0].ProposalCount(), 4u);
  // Without motion compensation the boxes overlap by only 2/10 of the union.
  result = MineTracks(props, StationaryTracker{}, MiningConfig{}, 4, size);
  EXPECT_TRUE(result.tracks.empty());
  EXPECT_EQ(result.discarded.size(), 4u);
}

TEST(FlowShiftTrackerTest, ConstantAndZeroFlow) {
  const FrameSize size(20, 20);
  const FlowShiftTracker tracker(
      {FlowField{DenseMap(size, 2.0), DenseMap(size, 0.0)},
       FlowField{DenseMap(size, 0.0), DenseMap(size, 0.0)}});
  EXPECT_EQ(tracker.Predict(0, BoundingBox(1, 1, 5, 5), size),
            BoundingBox(3, 1, 7, 5));
  EXPECT_EQ(tracker.Predict(1, BoundingBox(1, 1, 5, 5), size),
            BoundingBox(1, 1, 5, 5));
  // Past the last transition the box stays put.
  EXPECT_EQ(tracker.Predict(5, BoundingBox(1, 1, 5, 5), size),
            BoundingBox(1, 1, 5, 5));
}

TEST(FlowShiftTrackerTest, MedianOverBox) {
  const FrameSize size(10, 10);
  DenseMap u(size, 1.0), v(size, -1.0);
  // Outliers on a minority of box pixels do not move the median.
  u.at(2, 2) = 9.0;
  v.at(3, 3) = 7.0;
  const FlowShiftTracker tracker({FlowField{u, v}});
  EXPECT_EQ(tracker.Predict(0, BoundingBox(2, 2, 5, 5), size),
            BoundingBox(3, 1, 6, 4));
}

TEST(FlowShiftTrackerTest, EvenCountMedianAveragesMiddle) {
  const FrameSize size(4, 1);
  DenseMap u(size), v(size);
  u.at(0, 0) = 1.0;
  u.at(1, 0) = 3.0;
  const FlowShiftTracker tracker({FlowField{u, v}});
  // Median of {1, 3} is 2.
  EXPECT_EQ(tracker.Predict(0, BoundingBox(0, 0, 2, 1), size),
            BoundingBox(2, 0, 4, 1));
}

TEST(InheritFeaturesTest, MaxOverlapSource) {
  const FrameSize size(10, 10);
  std::vector<RegionProposal> sources{
      MakeProposal(0, BinaryMask::FromBox(size, BoundingBox(0, 0, 4, 4)), 1.0,
                   0.5, {1.0, 0.0}),
      MakeProposal(0, BinaryMask::FromBox(size, BoundingBox(2, 2, 8, 8)), 1.0,
                   0.5, {0.0, 1.0}),
      MakeProposal(1, BinaryMask::FromBox(size, BoundingBox(0, 0, 10, 10)), 1.0,
                   0.5, {0.6, 0.8})};
  std::vector<RegeneratedProposal> regen{
      Regen(0, 0, size, BoundingBox(0, 0, 3, 3), 0.5, {}),
      Regen(1, 0, size, BoundingBox(3, 3, 7, 7), 0.5, {}),
      Regen(2, 0, size, BoundingBox(8, 8, 10, 10), 0.5, {})};
  InheritFeatures(regen, sources, 2);
  EXPECT_EQ(regen[0].feature, (FeatureVector{1.0, 0.0}));
  EXPECT_EQ(regen[1].feature, (FeatureVector{0.0, 1.0}));
  EXPECT_EQ(regen[2].feature, (FeatureVector{0.0, 0.0}));
}

// Random proposal sets: every proposal ends up in exactly one track or in
// the discarded list.
TEST(MineTracksTest, PartitionProperty) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const FrameSize size(24, 24);
    const int frames = 1 + static_cast<int>(rng() % 6);
    std::vector<RegeneratedProposal> props;
    const int n = static_cast<int>(rng() % 25);
    for (int i = 0; i < n; ++i) {
      const int x0 = rng() % 18, y0 = rng() % 18;
      props.push_back(Regen(props.size(), static_cast<int>(rng() % frames), size,
                            BoundingBox(x0, y0, x0 + 2 + rng() % 6,
                                        y0 + 2 + rng() % 6)));
    }
    MiningConfig cfg;
    cfg.rng_seed = trial;
    const auto result = MineTracks(props, StationaryTracker{}, cfg, frames, size);
    std::multiset<std::size_t> seen(result.discarded.begin(),
                                    result.discarded.end());
    for (const Track& t : result.tracks) {
      EXPECT_GE(t.entries.size(), 2u);
      EXPECT_GE(t.phi, 0.0);
      EXPECT_LE(t.phi, 1.0);
      double norm = 0.0;
      for (double f : t.feature) norm += f * f;
      EXPECT_LE(std::sqrt(norm), 1.0 + 1e-12);
      for (const auto& e : t.entries) {
        for (const auto& p : e.absorbed) {
          EXPECT_EQ(p.frame_index, e.frame_index);
          seen.insert(p.id);
        }
      }
    }
    ASSERT_EQ(seen.size(), props.size());
    for (std::size_t i = 0; i < props.size(); ++i) EXPECT_EQ(seen.count(i), 1u);
  }
}

TEST(MineTracksTest, RejectsOutOfRangeFrame) {
  const FrameSize size(8, 8);
  const std::vector<RegeneratedProposal> props{
      Regen(0, 5, size, BoundingBox(0, 0, 2, 2))};
  EXPECT_THROW(MineTracks(props, StationaryTracker{}, MiningConfig{}, 3, size),
               ValidationError);
}

}  // namespace
}  // namespace trackcut
