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

#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "trackcut/config.h"
#include "trackcut/errors.h"
#include "trackcut/io.h"
#include "trackcut/key_value.h"
#include "trackcut/manifest.h"

namespace trackcut {
namespace {

using testing::Slurp;
using testing::TempDir;

void WriteBytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

TEST(FmapTest, RoundTripAndLayout) {
  TempDir dir("fmap");
  const FrameSize size(3, 2);
  const DenseMap map(size, {0.0, 0.25, -1.5, 3.0, 1e-3, 7.0});
  io::WriteFmap(dir.path() / "a.fmap", map);
  const std::string bytes = Slurp(dir.path() / "a.fmap");
  EXPECT_EQ(bytes.substr(0, 9), "FMAP 3 2\n");
  EXPECT_EQ(bytes.size(), 9u + 6u * 4u);
  const DenseMap back = io::ReadFmap(dir.path() / "a.fmap");
  ASSERT_EQ(back.size(), size);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(back.values()[i],
              static_cast<double>(static_cast<float>(map.values()[i])));
  }
  // Little-endian float32: 0.25 is 0x3e800000.
  EXPECT_EQ(static_cast<unsigned char>(bytes[9 + 4 + 3]), 0x3e);
  EXPECT_EQ(static_cast<unsigned char>(bytes[9 + 4 + 2]), 0x80);
}

TEST(FmapTest, RejectsTruncatedOrTrailing) {
  TempDir dir("fmap_bad");
  const FrameSize size(2, 2);
  io::WriteFmap(dir.path() / "ok.fmap", DenseMap(size, 1.0));
  const std::string bytes = Slurp(dir.path() / "ok.fmap");
  WriteBytes(dir.path() / "short.fmap", bytes.substr(0, bytes.size() - 1));
  WriteBytes(dir.path() / "long.fmap", bytes + "x");
  WriteBytes(dir.path() / "hdr.fmap", "IMAP 2 2\n" + bytes.substr(9));
  EXPECT_THROW(io::ReadFmap(dir.path() / "short.fmap"), ValidationError);
  EXPECT_THROW(io::ReadFmap(dir.path() / "long.fmap"), ValidationError);
  EXPECT_THROW(io::ReadFmap(dir.path() / "hdr.fmap"), ValidationError);
  EXPECT_THROW(io::ReadFmap(dir.path() / "missing.fmap"), ValidationError);
}

TEST(ImapTest, RoundTrip) {
  TempDir dir("imap");
  const LabelMap map(FrameSize(2, 3), {0, -4, 7, 1 << 20, 3, 2});
  io::WriteImap(dir.path() / "sub" / "a.imap", map);
  EXPECT_EQ(Slurp(dir.path() / "sub" / "a.imap").substr(0, 9), "IMAP 2 3\n");
  EXPECT_EQ(io::ReadImap(dir.path() / "sub" / "a.imap"), map);
}

TEST(PpmTest, RoundTrip) {
  TempDir dir("ppm");
  RgbImage img(FrameSize(4, 2));
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    img.pixels()[i] = {i / 255.0, 1.0, 0.0};
  }
  io::WritePpm(dir.path() / "f.ppm", img);
  EXPECT_EQ(Slurp(dir.path() / "f.ppm").substr(0, 2), "P6");
  EXPECT_EQ(io::ReadPpm(dir.path() / "f.ppm"), img);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(io::FormatDouble(0.5), "0.5");
  EXPECT_EQ(io::FormatDouble(1.0), "1");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(io::FormatDouble(v)), v);
  }
}

TEST(ProposalsTest, RoundTrip) {
  TempDir dir("proposals");
  const FrameSize size(8, 6);
  std::vector<RegionProposal> props{
      MakeProposal(0, BinaryMask::FromBox(size, BoundingBox(1, 1, 4, 3)), 0.7,
                   0.3, {0.1, 0.2, 0.3}),
      MakeProposal(2, BinaryMask::FromBox(size, BoundingBox(0, 0, 8, 6)), 1.25,
                   1.0, {-1.0, 0.0, 0.5})};
  props[1].motion_score = 3.5;
  props[1].combined_score = 0.75;
  props[1].rescored = 0.75;
  io::WriteProposals(dir.path() / "plain.proposals", props, false);
  io::WriteProposals(dir.path() / "scored.proposals", props, true);
  const auto plain = io::ReadProposals(dir.path() / "plain.proposals");
  const auto scored = io::ReadProposals(dir.path() / "scored.proposals");
  ASSERT_EQ(plain.size(), 2u);
  ASSERT_EQ(scored.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto* back : {&plain[i], &scored[i]}) {
      EXPECT_EQ(back->frame_index, props[i].frame_index);
      EXPECT_EQ(back->mask, props[i].mask);
      EXPECT_EQ(back->appearance_score, props[i].appearance_score);
      EXPECT_EQ(back->classifier_confidence, props[i].classifier_confidence);
      EXPECT_EQ(back->feature, props[i].feature);
    }
  }
  EXPECT_EQ(scored[1].motion_score, 3.5);
  EXPECT_EQ(scored[1].rescored, 0.75);
  EXPECT_EQ(plain[1].motion_score, 0.0);
}

TEST(ProposalsTest, ParsesHandWrittenFile) {
  TempDir dir("proposals_text");
  WriteBytes(dir.path() / "p.proposals",
             "# frame rle appearance confidence features\n"
             "\n"
             "1\t4 4; 0:2 4:2\t0.9\t0.8\t3,4\n");
  const auto props = io::ReadProposals(dir.path() / "p.proposals");
  ASSERT_EQ(props.size(), 1u);
  EXPECT_EQ(props[0].frame_index, 1);
  EXPECT_EQ(props[0].mask.Area(), 4);
  EXPECT_EQ(props[0].box, BoundingBox(0, 0, 2, 2));
  EXPECT_DOUBLE_EQ(props[0].feature[0], 0.6);
}

TEST(ProposalsTest, RejectsBadRecords) {
  TempDir dir("proposals_bad");
  const std::vector<std::string> bad{
      "0\t4 4; 0:2\t0.9\n",                  // missing fields
      "0\t4 4; 0:2\t0.9\t1.5\t1\n",          // confidence > 1
      "0\t4 4; 0:2\tnan\t0.5\t1\n",          // non-finite appearance
      "0\t4 4; 0:2\t0.9\t0.5\t1,x\n",        // bad feature
      "0\t4 4;\t0.9\t0.5\t1\n",              // empty mask
      "0\t4 4; 0:2\t0.9\t0.5\t1\n0\t4 4; 0:2\t0.9\t0.5\t1,2\n",  // dims differ
  };
  for (std::size_t i = 0; i < bad.size(); ++i) {
    const auto p = dir.path() / ("b" + std::to_string(i));
    WriteBytes(p, bad[i]);
    EXPECT_THROW(io::ReadProposals(p), ValidationError) << bad[i];
  }
}

TEST(SelectionFileTest, RoundTrip) {
  TempDir dir("selection");
  SelectionResult r;
  r.selected = {3, 0, 2};
  r.objective_value = 4.125;
  r.gain_trace = {2.5, 1.0, 0.625};
  io::WriteSelection(dir.path() / "s", r);
  const SelectionResult back = io::ReadSelection(dir.path() / "s");
  EXPECT_EQ(back.selected, r.selected);
  EXPECT_EQ(back.objective_value, r.objective_value);
  EXPECT_EQ(back.gain_trace, r.gain_trace);
}

TEST(TracksFileTest, RoundTrip) {
  TempDir dir("tracks");
  const FrameSize size(8, 8);
  std::vector<RegeneratedProposal> regen;
  for (int t = 0; t < 3; ++t) {
    const BoundingBox box(t, 0, t + 3, 3);
    regen.push_back(RegeneratedProposal{.id = regen.size(),
                                        .frame_index = t,
                                        .mask = BinaryMask::FromBox(size, box),
                                        .box = box,
                                        .confidence = 0.5 + 0.1 * t,
                                        .source_level = 0.25,
                                        .feature = {0.6, 0.8}});
  }
  io::WriteRegenerated(dir.path() / "r", regen);
  const auto regen_back = io::ReadRegenerated(dir.path() / "r");
  ASSERT_EQ(regen_back.size(), regen.size());
  for (std::size_t i = 0; i < regen.size(); ++i) {
    EXPECT_EQ(regen_back[i].id, i);
    EXPECT_EQ(regen_back[i].mask, regen[i].mask);
    EXPECT_EQ(regen_back[i].confidence, regen[i].confidence);
    EXPECT_EQ(regen_back[i].source_level, regen[i].source_level);
    EXPECT_EQ(regen_back[i].feature, regen[i].feature);
  }

  MiningResult mining;
  Track t;
  t.entries.push_back({0, BoundingBox(0, 0, 3, 3), {regen[0]}});
  t.entries.push_back({1, BoundingBox(1, 0, 4, 3), {}});
  t.entries.push_back({2, BoundingBox(2, 0, 5, 3), {regen[2]}});
  t.feature = {0.6, 0.8};
  t.phi = 0.6;
  mining.tracks.push_back(t);
  mining.discarded = {1};
  io::WriteTracks(dir.path() / "t", mining);
  const MiningResult back = io::ReadTracks(dir.path() / "t", regen_back);
  ASSERT_EQ(back.tracks.size(), 1u);
  EXPECT_EQ(back.discarded, mining.discarded);
  const Track& bt = back.tracks[0];
  EXPECT_EQ(bt.phi, t.phi);
  EXPECT_EQ(bt.feature, t.feature);
  ASSERT_EQ(bt.entries.size(), 3u);
  EXPECT_EQ(bt.entries[1].box, BoundingBox(1, 0, 4, 3));
  EXPECT_TRUE(bt.entries[1].absorbed.empty());
  ASSERT_EQ(bt.entries[2].absorbed.size(), 1u);
  EXPECT_EQ(bt.entries[2].absorbed[0].id, 2u);

  // Track files refer to regenerated ids, which must exist.
  EXPECT_THROW(io::ReadTracks(dir.path() / "t", {}), ValidationError);
}

TEST(KeyValuesTest, Parse) {
  const KeyValues kv = KeyValues::Parse(
      "# comment\n a = 1 \n\nb=two # trailing\nflag = true\n", "test");
  EXPECT_EQ(kv.GetInt("a"), 1);
  EXPECT_EQ(kv.Get("b"), "two");
  EXPECT_TRUE(kv.GetBool("flag"));
  EXPECT_EQ(kv.GetOr("c", "x"), "x");
  EXPECT_THROW(kv.Get("c"), ValidationError);
  EXPECT_THROW(kv.GetDouble("b"), ValidationError);
  EXPECT_THROW(kv.RejectUnknown({"a", "b"}), ValidationError);
  EXPECT_NO_THROW(kv.RejectUnknown({"a", "b", "flag"}));
  EXPECT_THROW(KeyValues::Parse("a = 1\na = 2\n", "dup"), ValidationError);
  EXPECT_THROW(KeyValues::Parse("novalue\n", "bad"), ValidationError);
}

TEST(ConfigTest, DefaultsRoundTrip) {
  const PipelineConfig d;
  const PipelineConfig back = ParseConfig(FormatConfig(d), "formatted");
  EXPECT_EQ(FormatConfig(back), FormatConfig(d));
  EXPECT_EQ(ParseConfig("", "empty").delta, d.delta);
}

TEST(ConfigTest, ParsesEveryKey) {
  const PipelineConfig c = ParseConfig(
      "scoring.normalization = per_frame_minmax\n"
      "scoring.epsilon = 1e-9\n"
      "pool.weight = classifier\n"
      "mining.levels = 5\n"
      "mining.connectivity = 4\n"
      "mining.iou_absorb = 0.6\n"
      "mining.min_region_area = 3\n"
      "mining.seed = 42\n"
      "mining.tracker = stationary\n"
      "selection.delta = 0.25\n"
      "selection.lambda = 0\n"
      "selection.budget = 4\n"
      "selection.lazy = false\n"
      "segment.lambda_o = 2\n"
      "segment.lambda_p = 0.1\n"
      "segment.fg_threshold = 0.6\n"
      "segment.bg_threshold = 0.4\n"
      "segment.prob_floor = 1e-6\n"
      "segment.grid_cell = 4\n"
      "gmm.components = 3\n"
      "gmm.seed = 7\n"
      "gmm.max_iters = 20\n"
      "gmm.tol = 1e-4\n"
      "gmm.cov_epsilon = 1e-3\n",
      "all");
  EXPECT_EQ(c.scoring.normalization, Normalization::kPerFrameMinMax);
  EXPECT_EQ(c.scoring.epsilon, 1e-9);
  EXPECT_EQ(c.pool_weight, PoolWeight::kClassifier);
  EXPECT_EQ(c.mining.levels, 5);
  EXPECT_EQ(c.mining.connectivity, Connectivity::kFour);
  EXPECT_EQ(c.mining.iou_absorb, 0.6);
  EXPECT_EQ(c.mining.min_region_area, 3);
  EXPECT_EQ(c.mining.rng_seed, 42u);
  EXPECT_EQ(c.tracker, TrackerKind::kStationary);
  EXPECT_EQ(c.delta, 0.25);
  EXPECT_EQ(c.lambda, 0.0);
  EXPECT_EQ(c.budget, 4u);
  EXPECT_FALSE(c.lazy_greedy);
  EXPECT_EQ(c.segment.lambda_o, 2.0);
  EXPECT_EQ(c.segment.lambda_p, 0.1);
  EXPECT_EQ(c.segment.fg_threshold, 0.6);
  EXPECT_EQ(c.segment.bg_threshold, 0.4);
  EXPECT_EQ(c.segment.prob_floor, 1e-6);
  EXPECT_EQ(c.grid_cell, 4);
  EXPECT_EQ(c.segment.gmm.components, 3);
  EXPECT_EQ(c.segment.gmm.seed, 7u);
  EXPECT_EQ(c.segment.gmm.max_iters, 20);
  EXPECT_EQ(c.segment.gmm.tol, 1e-4);
  EXPECT_EQ(c.segment.gmm.cov_epsilon, 1e-3);
  EXPECT_EQ(FormatConfig(ParseConfig(FormatConfig(c), "again")), FormatConfig(c));
}

TEST(ConfigTest, RejectsBadValues) {
  EXPECT_THROW(ParseConfig("unknown.key = 1\n", "x"), ValidationError);
  EXPECT_THROW(ParseConfig("mining.connectivity = 6\n", "x"), ValidationError);
  EXPECT_THROW(ParseConfig("pool.weight = mean\n", "x"), ValidationError);
  EXPECT_THROW(ParseConfig("mining.seed = -1\n", "x"), ValidationError);
  PipelineConfig c;
  c.delta = -0.1;
  EXPECT_THROW(c.Validate(), ValidationError);
  c = PipelineConfig{};
  c.segment.prob_floor = 0.0;
  EXPECT_THROW(c.Validate(), ValidationError);
}

TEST(ConfigTest, SeedOverride) {
  PipelineConfig c;
  ::setenv("TRACKCUT_SEED", "99", 1);
  ApplySeedOverride(c);
  EXPECT_EQ(c.mining.rng_seed, 99u);
  EXPECT_EQ(c.segment.gmm.seed, 99u);
  ::setenv("TRACKCUT_SEED", "abc", 1);
  EXPECT_THROW(ApplySeedOverride(c), ValidationError);
  ::unsetenv("TRACKCUT_SEED");
  PipelineConfig untouched;
  ApplySeedOverride(untouched);
  EXPECT_EQ(untouched.mining.rng_seed, 0u);
}

TEST(ManifestTest, ExpandPattern) {
  EXPECT_EQ(ExpandPattern("frames/{t}.ppm", 7), "frames/0007.ppm");
  EXPECT_EQ(ExpandPattern("u_{t}_{t}", 12), "u_0012_0012");
  EXPECT_EQ(ExpandPattern("static.fmap", 3), "static.fmap");
}

constexpr const char* kManifest =
    "video_id = clip\n"
    "frame_count = 3\n"
    "width = 16\n"
    "height = 8\n"
    "classes = cat,dog\n"
    "feature_dim = 4\n"
    "frames = f/{t}.ppm\n"
    "proposals.cat = cat.proposals\n"
    "proposals.dog = /abs/dog.proposals\n"
    "motion = m/{t}.fmap\n"
    "flow_u = u/{t}.fmap\n"
    "flow_v = v/{t}.fmap\n"
    "groundtruth = gt/{t}.imap\n"
    "groundtruth_frames = 0,2\n";

TEST(ManifestTest, ParseAndResolve) {
  const VideoManifest m = ParseManifest(kManifest, "/data/clip", "m");
  EXPECT_EQ(m.video_id, "clip");
  EXPECT_EQ(m.frame_count, 3);
  EXPECT_EQ(m.size, FrameSize(16, 8));
  EXPECT_EQ(m.classes, (std::vector<std::string>{"cat", "dog"}));
  EXPECT_EQ(m.feature_dim, 4);
  EXPECT_EQ(m.ProposalPath(0), std::filesystem::path("/data/clip/cat.proposals"));
  EXPECT_EQ(m.ProposalPath(1), std::filesystem::path("/abs/dog.proposals"));
  EXPECT_EQ(m.Resolve(m.motion, 2), std::filesystem::path("/data/clip/m/0002.fmap"));
  EXPECT_TRUE(m.superpixels.empty());
  EXPECT_TRUE(m.HasGroundTruth());
  EXPECT_EQ(m.groundtruth_frames, (std::vector<int>{0, 2}));
  const VideoManifest again = ParseManifest(FormatManifest(m), "/data/clip", "m2");
  EXPECT_EQ(FormatManifest(again), FormatManifest(m));
}

TEST(ManifestTest, SingleClassShorthand) {
  const VideoManifest m = ParseManifest(
      "video_id = v\nframe_count = 1\nwidth = 4\nheight = 4\nclasses = car\n"
      "feature_dim = 2\nframes = {t}.ppm\nproposals = car.txt\nmotion = m\n"
      "flow_u = u\nflow_v = v\n",
      "/d", "m");
  EXPECT_EQ(m.proposals, std::vector<std::string>{"car.txt"});
  EXPECT_FALSE(m.HasGroundTruth());
}

TEST(ManifestTest, RejectsBadManifests) {
  const std::string base = kManifest;
  EXPECT_THROW(ParseManifest(base + "extra = 1\n", "/d", "m"), ValidationError);
  EXPECT_THROW(ParseManifest(base + "groundtruth_frames = 5\n", "/d", "m"),
               ValidationError);
  std::string no_dog = base;
  no_dog.erase(no_dog.find("proposals.dog"), std::string("proposals.dog = /abs/dog.proposals\n").size());
  EXPECT_THROW(ParseManifest(no_dog, "/d", "m"), ValidationError);
  std::string bad_frames = base;
  bad_frames.replace(bad_frames.find("groundtruth_frames = 0,2"),
                     std::string("groundtruth_frames = 0,2").size(),
                     "groundtruth_frames = 0,7");
  EXPECT_THROW(ParseManifest(bad_frames, "/d", "m"), ValidationError);
  EXPECT_THROW(LoadManifest("/nonexistent/manifest.txt"), ValidationError);
}

TEST(ManifestTest, LoadChecksFilesExist) {
  TempDir dir("manifest");
  io::WriteText(dir.path() / "manifest.txt", kManifest);
  EXPECT_THROW(LoadManifest(dir.path() / "manifest.txt"), ValidationError);
}

}  // namespace
}  // namespace trackcut
