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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "trackcut/errors.h"
#include "trackcut/pooling.h"
#include "trackcut/superpixel_graph.h"

namespace trackcut {
namespace {

TEST(PoolFrameTest, SingleProposalGivesItsMask) {
  const FrameSize size(6, 5);
  const BinaryMask m = BinaryMask::FromBox(size, BoundingBox(1, 1, 4, 3));
  const std::vector<WeightedMask> items{{&m, 0.37}};
  const DenseMap out = PoolFrame(size, items);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      EXPECT_EQ(out.at(x, y), m.Contains(x, y) ? 1.0 : 0.0);
    }
  }
}

TEST(PoolFrameTest, TwoOverlappingMasks) {
  const FrameSize size(4, 1);
  const BinaryMask a = BinaryMask::FromRuns(size, {{0, 2}});
  const BinaryMask b = BinaryMask::FromRuns(size, {{1, 2}});
  const std::vector<WeightedMask> items{{&a, 0.6}, {&b, 0.4}};
  const DenseMap out = PoolFrame(size, items);
  EXPECT_DOUBLE_EQ(out.at(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(out.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(out.at(2, 0), 0.4);
  EXPECT_EQ(out.at(3, 0), 0.0);
}

TEST(PoolFrameTest, IdenticalMasksCancelWeights) {
  const FrameSize size(3, 3);
  const BinaryMask m = BinaryMask::FromBox(size, BoundingBox(0, 0, 2, 2));
  const std::vector<WeightedMask> items{{&m, 0.9}, {&m, 0.1}};
  const DenseMap out = PoolFrame(size, items);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      EXPECT_EQ(out.at(x, y), m.Contains(x, y) ? 1.0 : 0.0);
    }
  }
}

TEST(PoolFrameTest, NoEvidenceIsZero) {
  const FrameSize size(3, 3);
  const BinaryMask m = BinaryMask::FromBox(size, BoundingBox(0, 0, 2, 2));
  EXPECT_EQ(PoolFrame(size, {}), DenseMap(size));
  const std::vector<WeightedMask> zero{{&m, 0.0}};
  EXPECT_EQ(PoolFrame(size, zero), DenseMap(size));
}

TEST(PoolFrameTest, RejectsBadInput) {
  const BinaryMask m = BinaryMask::FromBox(FrameSize(3, 3), BoundingBox(0, 0, 1, 1));
  const std::vector<WeightedMask> negative{{&m, -0.1}};
  EXPECT_THROW(PoolFrame(FrameSize(3, 3), negative), ValidationError);
  const std::vector<WeightedMask> ok{{&m, 0.1}};
  EXPECT_THROW(PoolFrame(FrameSize(4, 3), ok), ValidationError);
}

TEST(PoolFrameTest, CoveredByAllIsExactlyOne) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> conf(0.01, 3.0);
  const FrameSize size(12, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BinaryMask> masks;
    const int n = 1 + rng() % 8;
    for (int i = 0; i < n; ++i) {
      const int x0 = rng() % 4, y0 = rng() % 4;
      masks.push_back(BinaryMask::FromBox(
          size, BoundingBox(x0, y0, 6 + rng() % 6, 5 + rng() % 5)));
    }
    std::vector<WeightedMask> items;
    for (const auto& m : masks) items.push_back({&m, conf(rng)});
    const DenseMap out = PoolFrame(size, items);
    for (int y = 0; y < size.height; ++y) {
      for (int x = 0; x < size.width; ++x) {
        bool all = true, any = false;
        for (const auto& m : masks) {
          all = all && m.Contains(x, y);
          any = any || m.Contains(x, y);
        }
        if (all) EXPECT_EQ(out.at(x, y), 1.0);
        if (!any) EXPECT_EQ(out.at(x, y), 0.0);
      }
    }
  }
}

RegeneratedProposal Regen(std::size_t id, int frame, const FrameSize& size,
                          const BoundingBox& box, double c) {
  return RegeneratedProposal{.id = id,
                             .frame_index = frame,
                             .mask = BinaryMask::FromBox(size, box),
                             .box = box,
                             .confidence = c,
                             .source_level = 0.5,
                             .feature = {1.0}};
}

Track MakeTrack(std::vector<RegeneratedProposal> props) {
  Track t;
  for (auto& p : props) {
    t.entries.push_back(TrackEntry{p.frame_index, p.box, {p}});
  }
  return t;
}

TEST(PoolTracksTest, SingleTrackGivesMasks) {
  const FrameSize size(8, 8);
  const Track t = MakeTrack({Regen(0, 0, size, BoundingBox(0, 0, 2, 2), 0.5),
                             Regen(1, 1, size, BoundingBox(1, 0, 3, 2), 0.7),
                             Regen(2, 2, size, BoundingBox(2, 0, 4, 2), 0.2)});
  const std::vector<Track> tracks{t};
  const auto pooled = PoolTracks(tracks, 3, size);
  ASSERT_EQ(pooled.size(), 3u);
  for (int f = 0; f < 3; ++f) {
    EXPECT_EQ(pooled[f].frame_index, f);
    const BinaryMask& m = t.entries[f].absorbed[0].mask;
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        EXPECT_EQ(pooled[f].map.at(x, y), m.Contains(x, y) ? 1.0 : 0.0);
      }
    }
  }
}

TEST(PoolTracksTest, OverlapOnSharedFrameOnly) {
  const FrameSize size(4, 1);
  const Track a = MakeTrack({Regen(0, 0, size, BoundingBox(0, 0, 2, 1), 0.6),
                             Regen(1, 1, size, BoundingBox(0, 0, 2, 1), 0.6)});
  const Track b = MakeTrack({Regen(2, 1, size, BoundingBox(1, 0, 3, 1), 0.4),
                             Regen(3, 2, size, BoundingBox(1, 0, 3, 1), 0.4)});
  const std::vector<Track> tracks{a, b};
  const auto pooled = PoolTracks(tracks, 3, size);
  EXPECT_DOUBLE_EQ(pooled[1].map.at(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(pooled[1].map.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(pooled[1].map.at(2, 0), 0.4);
  EXPECT_EQ(pooled[0].map.at(0, 0), 1.0);
  EXPECT_EQ(pooled[0].map.at(2, 0), 0.0);
  EXPECT_EQ(pooled[2].map.at(2, 0), 1.0);
  EXPECT_EQ(pooled[2].map.at(0, 0), 0.0);
}

TEST(PoolTracksTest, EmptySelectionIsZero) {
  const FrameSize size(5, 5);
  const auto pooled = PoolTracks({}, 4, size);
  ASSERT_EQ(pooled.size(), 4u);
  for (const auto& p : pooled) EXPECT_EQ(p.map, DenseMap(size));
}

TEST(ReduceToSuperpixelsTest, ConstantMap) {
  const FrameSize size(6, 6);
  const auto c = ReduceToSuperpixels(DenseMap(size, 0.42), GridSuperpixels(size, 4));
  ASSERT_EQ(c.size(), 4u);
  for (double v : c) EXPECT_DOUBLE_EQ(v, 0.42);
}

TEST(ReduceToSuperpixelsTest, HalfCoveredSuperpixel) {
  const FrameSize size(4, 2);
  DenseMap map(size);
  map.at(0, 0) = map.at(1, 0) = 1.0;
  map.at(0, 1) = map.at(1, 1) = 0.0;
  const LabelMap labels(size, {0, 0, 1, 1, 0, 0, 1, 1});
  const auto c = ReduceToSuperpixels(map, labels);
  EXPECT_DOUBLE_EQ(c[0], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
}

TEST(ReduceToSuperpixelsTest, ZeroMap) {
  const FrameSize size(9, 7);
  for (double v : ReduceToSuperpixels(DenseMap(size), GridSuperpixels(size, 3))) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(ReduceToSuperpixelsTest, RejectsGapsInLabels) {
  const FrameSize size(2, 1);
  EXPECT_THROW(ReduceToSuperpixels(DenseMap(size), LabelMap(size, {0, 2})),
               ValidationError);
  EXPECT_THROW(ReduceToSuperpixels(DenseMap(size), LabelMap(size, {0, -1})),
               ValidationError);
  EXPECT_THROW(ReduceToSuperpixels(DenseMap(FrameSize(3, 1)), LabelMap(size, {0, 1})),
               ValidationError);
}

}  // namespace
}  // namespace trackcut
