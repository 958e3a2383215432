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

#include "trackcut/pipeline.h"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>

#include "trackcut/energy.h"
#include "trackcut/errors.h"
#include "trackcut/io.h"
#include "trackcut/pooling.h"
#include "trackcut/scoring.h"
#include "trackcut/superpixel_graph.h"

namespace trackcut {

namespace fs = std::filesystem;

namespace artifacts {

fs::path Config(const fs::path& dir) { return dir / "config.txt"; }
fs::path Scored(const fs::path& dir, const std::string& cls) {
  return dir / "scored" / (cls + ".proposals");
}
fs::path Pooled(const fs::path& dir, const std::string& cls, int t) {
  return dir / "pool" / cls / ExpandPattern("{t}.fmap", t);
}
fs::path Regenerated(const fs::path& dir, const std::string& cls) {
  return dir / "regen" / (cls + ".regen");
}
fs::path Tracks(const fs::path& dir, const std::string& cls) {
  return dir / "tracks" / (cls + ".tracks");
}
fs::path Instance(const fs::path& dir, const std::string& cls) {
  return dir / "selection" / (cls + ".instance");
}
fs::path Selection(const fs::path& dir, const std::string& cls) {
  return dir / "selection" / (cls + ".selection");
}
fs::path TrackPooled(const fs::path& dir, const std::string& cls, int t) {
  return dir / "trackpool" / cls / ExpandPattern("{t}.fmap", t);
}
fs::path Labels(const fs::path& dir, int t) {
  return dir / "labels" / ExpandPattern("{t}.imap", t);
}
fs::path Eval(const fs::path& dir) { return dir / "eval.txt"; }

}  // namespace artifacts

namespace {

constexpr Stage kStages[] = {Stage::kScore,  Stage::kPool,   Stage::kRegen,
                             Stage::kTrack,  Stage::kSelect, Stage::kSegment};

// Dense maps cross stage boundaries as float32 files; rounding in memory
// too keeps a full run identical to a stage-by-stage one.
void RoundToFloat(DenseMap& map) {
  for (double& v : map.values()) v = static_cast<double>(static_cast<float>(v));
}

template <typename Fn>
auto Guard(Stage stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(StageName(stage)) + ": " + e.what());
  } catch (const std::exception& e) {
    throw StageError(StageName(stage), e.what());
  }
}

void CheckSize(const FrameSize& got, const FrameSize& want,
               const std::string& what) {
  if (!(got == want)) {
    throw ValidationError(what + ": size " + std::to_string(got.width) + "x" +
                          std::to_string(got.height) +
                          " disagrees with the manifest");
  }
}

std::unique_ptr<Tracker> MakeTracker(const VideoData& video,
                                     const PipelineConfig& cfg) {
  if (cfg.tracker == TrackerKind::kStationary) {
    return std::make_unique<StationaryTracker>();
  }
  return std::make_unique<FlowShiftTracker>(video.flows);
}

void WriteMaps(const std::vector<DenseMap>& maps,
               const std::function<fs::path(int)>& path) {
  for (std::size_t t = 0; t < maps.size(); ++t) {
    io::WriteFmap(path(static_cast<int>(t)), maps[t]);
  }
}

std::vector<DenseMap> ReadMaps(int frames,
                               const std::function<fs::path(int)>& path,
                               const FrameSize& size) {
  std::vector<DenseMap> maps;
  for (int t = 0; t < frames; ++t) {
    maps.push_back(io::ReadFmap(path(t)));
    CheckSize(maps.back().size(), size, path(t).string());
  }
  return maps;
}

void WriteConfig(const fs::path& dir, const PipelineConfig& cfg) {
  io::WriteText(artifacts::Config(dir), FormatConfig(cfg));
}

}  // namespace

const char* StageName(Stage stage) {
  switch (stage) {
    case Stage::kScore: return "score";
    case Stage::kPool: return "pool";
    case Stage::kRegen: return "regen";
    case Stage::kTrack: return "track";
    case Stage::kSelect: return "select";
    case Stage::kSegment: return "segment";
  }
  return "unknown";
}

Stage ParseStage(const std::string& name) {
  for (Stage s : kStages) {
    if (name == StageName(s)) return s;
  }
  throw ValidationError("unknown stage '" + name + "'");
}

const char* BaselineName(Baseline baseline) {
  switch (baseline) {
    case Baseline::kNone: return "none";
    case Baseline::kPool: return "pool";
    case Baseline::kTrack: return "track";
  }
  return "unknown";
}

Baseline ParseBaseline(const std::string& name) {
  for (Baseline b : {Baseline::kNone, Baseline::kPool, Baseline::kTrack}) {
    if (name == BaselineName(b)) return b;
  }
  throw ValidationError("unknown baseline '" + name + "'");
}

VideoData LoadVideo(const VideoManifest& manifest, const PipelineConfig& cfg) {
  manifest.Validate();
  VideoData v;
  v.manifest = manifest;
  const FrameSize size = manifest.size;
  const int frames = manifest.frame_count;
  for (int t = 0; t < frames; ++t) {
    const fs::path fp = manifest.Resolve(manifest.frames, t);
    v.frames.push_back(io::ReadPpm(fp));
    CheckSize(v.frames.back().size(), size, fp.string());
    const fs::path mp = manifest.Resolve(manifest.motion, t);
    v.motion.push_back(io::ReadFmap(mp));
    CheckSize(v.motion.back().size(), size, mp.string());
    v.motion.back().CheckRange(0.0, 1.0, "motion map");
    if (!manifest.superpixels.empty()) {
      const fs::path sp = manifest.Resolve(manifest.superpixels, t);
      v.superpixels.push_back(io::ReadImap(sp));
      CheckSize(v.superpixels.back().size(), size, sp.string());
      ValidateSuperpixels(v.superpixels.back());
    } else {
      v.superpixels.push_back(GridSuperpixels(size, cfg.grid_cell));
    }
  }
  for (int t = 0; t + 1 < frames; ++t) {
    const fs::path up = manifest.Resolve(manifest.flow_u, t);
    const fs::path vp = manifest.Resolve(manifest.flow_v, t);
    FlowField flow{io::ReadFmap(up), io::ReadFmap(vp)};
    CheckSize(flow.u.size(), size, up.string());
    CheckSize(flow.v.size(), size, vp.string());
    v.flows.push_back(std::move(flow));
  }
  for (std::size_t k = 0; k < manifest.classes.size(); ++k) {
    const fs::path pp = manifest.ProposalPath(k);
    std::vector<RegionProposal> proposals = io::ReadProposals(pp);
    for (const RegionProposal& p : proposals) {
      if (p.frame_index >= frames) {
        throw ValidationError(pp.string() + ": frame index outside video");
      }
      CheckSize(p.mask.size(), size, pp.string());
      if (p.feature.size() != static_cast<std::size_t>(manifest.feature_dim)) {
        throw ValidationError(pp.string() +
                              ": feature length differs from feature_dim");
      }
    }
    v.proposals.push_back(std::move(proposals));
  }
  v.groundtruth.assign(static_cast<std::size_t>(frames), std::nullopt);
  for (int t : manifest.groundtruth_frames) {
    const fs::path gp = manifest.Resolve(manifest.groundtruth, t);
    LabelMap gt = io::ReadImap(gp);
    CheckSize(gt.size(), size, gp.string());
    v.groundtruth[t] = std::move(gt);
  }
  return v;
}

std::vector<RegionProposal> ScoreStage(const VideoData& video,
                                       std::size_t class_index,
                                       const PipelineConfig& cfg) {
  std::vector<RegionProposal> scored = video.proposals.at(class_index);
  ScoreProposals(scored, video.motion, cfg.scoring);
  return scored;
}

std::vector<DenseMap> PoolStage(const VideoData& video,
                                const std::vector<RegionProposal>& scored,
                                const PipelineConfig& cfg) {
  const int frames = video.manifest.frame_count;
  std::vector<std::vector<WeightedMask>> per_frame(
      static_cast<std::size_t>(frames));
  for (const RegionProposal& p : scored) {
    const double c = cfg.pool_weight == PoolWeight::kRescored
                         ? p.rescored
                         : p.classifier_confidence;
    per_frame.at(p.frame_index).push_back({&p.mask, c});
  }
  std::vector<DenseMap> maps;
  for (int t = 0; t < frames; ++t) {
    maps.push_back(PoolFrame(video.manifest.size, per_frame[t]));
    RoundToFloat(maps.back());
  }
  return maps;
}

std::vector<RegeneratedProposal> RegenStage(
    const VideoData& video, const std::vector<DenseMap>& pooled,
    const std::vector<RegionProposal>& scored, const PipelineConfig& cfg) {
  std::vector<RegeneratedProposal> out;
  for (std::size_t t = 0; t < pooled.size(); ++t) {
    std::vector<RegeneratedProposal> frame =
        Regenerate(pooled[t], static_cast<int>(t), cfg.mining, out.size());
    for (RegeneratedProposal& r : frame) out.push_back(std::move(r));
  }
  InheritFeatures(out, scored,
                  static_cast<std::size_t>(video.manifest.feature_dim));
  return out;
}

MiningResult TrackStage(const VideoData& video,
                        const std::vector<RegeneratedProposal>& regenerated,
                        const PipelineConfig& cfg) {
  const std::unique_ptr<Tracker> tracker = MakeTracker(video, cfg);
  return MineTracks(regenerated, *tracker, cfg.mining,
                    video.manifest.frame_count, video.manifest.size);
}

SelectionResult SelectStage(const MiningResult& mining,
                            const PipelineConfig& cfg) {
  if (mining.tracks.empty()) return SelectionResult{};
  const SelectionInstance inst =
      MakeSelectionInstance(mining.tracks, cfg.delta, cfg.lambda, cfg.budget);
  return cfg.lazy_greedy ? LazyGreedySelect(inst) : GreedySelect(inst);
}

std::vector<DenseMap> TrackPoolStage(const VideoData& video,
                                     const MiningResult& mining,
                                     const std::vector<std::size_t>* selected) {
  std::vector<Track> chosen;
  if (selected == nullptr) {
    chosen = mining.tracks;
  } else {
    std::vector<std::size_t> order = *selected;
    std::sort(order.begin(), order.end());
    for (std::size_t i : order) chosen.push_back(mining.tracks.at(i));
  }
  std::vector<DenseMap> maps;
  for (PooledFrame& f : PoolTracks(chosen, video.manifest.frame_count,
                                   video.manifest.size)) {
    maps.push_back(std::move(f.map));
    RoundToFloat(maps.back());
  }
  return maps;
}

std::vector<LabelMap> SegmentStage(
    const VideoData& video,
    const std::vector<std::vector<DenseMap>>& class_maps,
    const PipelineConfig& cfg) {
  const SuperpixelGraph graph =
      BuildGraph(video.superpixels, video.frames, video.flows);
  std::vector<std::vector<double>> confidence;
  for (const std::vector<DenseMap>& maps : class_maps) {
    std::vector<double> per_node(graph.nodes.size(), 0.0);
    for (int t = 0; t < graph.FrameCount(); ++t) {
      const std::vector<double> local =
          ReduceToSuperpixels(maps.at(t), video.superpixels[t]);
      for (std::size_t s = 0; s < local.size(); ++s) {
        per_node[graph.NodeIndex(t, static_cast<int>(s))] =
            std::min(1.0, std::max(0.0, local[s]));
      }
    }
    confidence.push_back(std::move(per_node));
  }
  const SegmentationOutcome outcome = Segment(graph, confidence, cfg.segment);
  return PaintLabels(graph, outcome.expansion.labeling);
}

namespace {

// Carries one video through the stages, persisting as it goes.
class Runner {
 public:
  Runner(const VideoManifest& manifest, const PipelineConfig& cfg,
         const RunOptions& options)
      : cfg_(cfg), options_(options) {
    fs::create_directories(options.out_dir);
    WriteConfig(options.out_dir, cfg);
    video_ = LoadVideo(manifest, cfg);
  }

  const VideoData& video() const { return video_; }
  const std::string& cls(std::size_t k) const {
    return video_.manifest.classes[k];
  }
  std::size_t classes() const { return video_.manifest.classes.size(); }
  int frames() const { return video_.manifest.frame_count; }
  const fs::path& dir() const { return options_.out_dir; }

  std::vector<RegionProposal> Score(std::size_t k) {
    auto scored = Guard(Stage::kScore, [&] { return ScoreStage(video_, k, cfg_); });
    io::WriteProposals(artifacts::Scored(dir(), cls(k)), scored, true);
    return scored;
  }
  std::vector<DenseMap> Pool(std::size_t k,
                             const std::vector<RegionProposal>& scored) {
    auto maps = Guard(Stage::kPool, [&] { return PoolStage(video_, scored, cfg_); });
    WriteMaps(maps, [&](int t) { return artifacts::Pooled(dir(), cls(k), t); });
    return maps;
  }
  std::vector<RegeneratedProposal> Regen(
      std::size_t k, const std::vector<DenseMap>& pooled,
      const std::vector<RegionProposal>& scored) {
    auto regen = Guard(Stage::kRegen,
                       [&] { return RegenStage(video_, pooled, scored, cfg_); });
    io::WriteRegenerated(artifacts::Regenerated(dir(), cls(k)), regen);
    return regen;
  }
  MiningResult Track(std::size_t k,
                     const std::vector<RegeneratedProposal>& regen) {
    auto mining = Guard(Stage::kTrack,
                        [&] { return TrackStage(video_, regen, cfg_); });
    io::WriteTracks(artifacts::Tracks(dir(), cls(k)), mining);
    return mining;
  }
  std::vector<DenseMap> Select(std::size_t k, const MiningResult& mining) {
    const SelectionResult selection =
        Guard(Stage::kSelect, [&] { return SelectStage(mining, cfg_); });
    if (!mining.tracks.empty()) {
      io::WriteText(artifacts::Instance(dir(), cls(k)),
                    FormatSelectionInstance(MakeSelectionInstance(
                        mining.tracks, cfg_.delta, cfg_.lambda, cfg_.budget)));
    }
    io::WriteSelection(artifacts::Selection(dir(), cls(k)), selection);
    return TrackPool(k, mining, &selection.selected);
  }
  std::vector<DenseMap> TrackPool(std::size_t k, const MiningResult& mining,
                                  const std::vector<std::size_t>* selected) {
    auto maps = Guard(Stage::kSelect, [&] {
      return TrackPoolStage(video_, mining, selected);
    });
    WriteMaps(maps,
              [&](int t) { return artifacts::TrackPooled(dir(), cls(k), t); });
    return maps;
  }
  std::vector<LabelMap> Segment(
      const std::vector<std::vector<DenseMap>>& class_maps) {
    auto labels = Guard(Stage::kSegment, [&] {
      return SegmentStage(video_, class_maps, cfg_);
    });
    for (int t = 0; t < frames(); ++t) {
      io::WriteImap(artifacts::Labels(dir(), t), labels[t]);
    }
    return labels;
  }

  // Previous-stage artifacts, for single-stage runs.
  std::vector<RegionProposal> LoadScored(std::size_t k) const {
    return io::ReadProposals(artifacts::Scored(dir(), cls(k)));
  }
  std::vector<DenseMap> LoadPooled(std::size_t k) const {
    return ReadMaps(frames(),
                    [&](int t) { return artifacts::Pooled(dir(), cls(k), t); },
                    video_.manifest.size);
  }
  std::vector<RegeneratedProposal> LoadRegen(std::size_t k) const {
    return io::ReadRegenerated(artifacts::Regenerated(dir(), cls(k)));
  }
  MiningResult LoadTracks(std::size_t k) const {
    return io::ReadTracks(artifacts::Tracks(dir(), cls(k)), LoadRegen(k));
  }
  std::vector<DenseMap> LoadTrackPooled(std::size_t k) const {
    return ReadMaps(
        frames(), [&](int t) { return artifacts::TrackPooled(dir(), cls(k), t); },
        video_.manifest.size);
  }

  RunOutput Finish(std::vector<LabelMap> labels) const {
    RunOutput out;
    out.labels = std::move(labels);
    if (video_.manifest.HasGroundTruth()) {
      VideoEvalInput input{video_.manifest.video_id, video_.manifest.classes,
                           out.labels, video_.groundtruth};
      out.report = Evaluate(std::span<const VideoEvalInput>(&input, 1));
      io::WriteText(artifacts::Eval(dir()), FormatReport(*out.report));
      out.eval_input = std::move(input);
    }
    return out;
  }

 private:
  PipelineConfig cfg_;
  RunOptions options_;
  VideoData video_;
};

bool Reached(const RunOptions& options, Stage stage) {
  return options.stop_after && *options.stop_after == stage;
}

}  // namespace

RunOutput RunPipeline(const VideoManifest& manifest, const PipelineConfig& cfg,
                      const RunOptions& options) {
  cfg.Validate();
  Runner runner(manifest, cfg, options);
  const std::size_t classes = runner.classes();

  std::vector<std::vector<RegionProposal>> scored;
  for (std::size_t k = 0; k < classes; ++k) scored.push_back(runner.Score(k));
  if (Reached(options, Stage::kScore)) return {};

  std::vector<std::vector<DenseMap>> pooled;
  for (std::size_t k = 0; k < classes; ++k) {
    pooled.push_back(runner.Pool(k, scored[k]));
  }
  if (Reached(options, Stage::kPool)) return {};

  std::vector<std::vector<DenseMap>> class_maps;
  if (options.baseline == Baseline::kPool) {
    class_maps = pooled;
  } else {
    std::vector<MiningResult> mined;
    for (std::size_t k = 0; k < classes; ++k) {
      const auto regen = runner.Regen(k, pooled[k], scored[k]);
      if (Reached(options, Stage::kRegen)) continue;
      mined.push_back(runner.Track(k, regen));
    }
    if (Reached(options, Stage::kRegen) || Reached(options, Stage::kTrack)) {
      return {};
    }
    for (std::size_t k = 0; k < classes; ++k) {
      class_maps.push_back(options.baseline == Baseline::kTrack
                               ? runner.TrackPool(k, mined[k], nullptr)
                               : runner.Select(k, mined[k]));
    }
    if (Reached(options, Stage::kSelect)) return {};
  }
  return runner.Finish(runner.Segment(class_maps));
}

void RunSingleStage(Stage stage, const VideoManifest& manifest,
                    const PipelineConfig& cfg, const RunOptions& options) {
  cfg.Validate();
  Runner runner(manifest, cfg, options);
  const std::size_t classes = runner.classes();
  switch (stage) {
    case Stage::kScore:
      for (std::size_t k = 0; k < classes; ++k) runner.Score(k);
      return;
    case Stage::kPool:
      for (std::size_t k = 0; k < classes; ++k) {
        runner.Pool(k, runner.LoadScored(k));
      }
      return;
    case Stage::kRegen:
      for (std::size_t k = 0; k < classes; ++k) {
        runner.Regen(k, runner.LoadPooled(k), runner.LoadScored(k));
      }
      return;
    case Stage::kTrack:
      for (std::size_t k = 0; k < classes; ++k) {
        runner.Track(k, runner.LoadRegen(k));
      }
      return;
    case Stage::kSelect:
      for (std::size_t k = 0; k < classes; ++k) {
        const MiningResult mining = runner.LoadTracks(k);
        if (options.baseline == Baseline::kTrack) {
          runner.TrackPool(k, mining, nullptr);
        } else {
          runner.Select(k, mining);
        }
      }
      return;
    case Stage::kSegment: {
      std::vector<std::vector<DenseMap>> maps;
      for (std::size_t k = 0; k < classes; ++k) {
        maps.push_back(options.baseline == Baseline::kPool
                           ? runner.LoadPooled(k)
                           : runner.LoadTrackPooled(k));
      }
      runner.Finish(runner.Segment(maps));
      return;
    }
  }
}

}  // namespace trackcut
