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

#ifndef TRACKCUT_PIPELINE_H_
#define TRACKCUT_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trackcut/config.h"
#include "trackcut/dense_map.h"
#include "trackcut/evaluate.h"
#include "trackcut/manifest.h"
#include "trackcut/mining.h"
#include "trackcut/proposal.h"
#include "trackcut/selection.h"

namespace trackcut {

enum class Stage { kScore, kPool, kRegen, kTrack, kSelect, kSegment };

const char* StageName(Stage stage);
Stage ParseStage(const std::string& name);

// Which confidence maps feed the segmentation.
//   kNone:  tracks chosen by selection (the full system)
//   kPool:  the per-frame pooled proposal maps
//   kTrack: every mined track, without selection
enum class Baseline { kNone, kPool, kTrack };

const char* BaselineName(Baseline baseline);
Baseline ParseBaseline(const std::string& name);

// Everything a manifest points at, loaded and cross-checked.
struct VideoData {
  VideoManifest manifest;
  std::vector<RgbImage> frames;
  std::vector<std::vector<RegionProposal>> proposals;  // per class
  std::vector<DenseMap> motion;
  std::vector<FlowField> flows;
  std::vector<LabelMap> superpixels;  // manifest maps or a regular grid
  std::vector<std::optional<LabelMap>> groundtruth;
};

VideoData LoadVideo(const VideoManifest& manifest, const PipelineConfig& cfg);

// Stage kernels. Each works on one class of one video.
std::vector<RegionProposal> ScoreStage(const VideoData& video,
                                       std::size_t class_index,
                                       const PipelineConfig& cfg);
std::vector<DenseMap> PoolStage(const VideoData& video,
                                const std::vector<RegionProposal>& scored,
                                const PipelineConfig& cfg);
std::vector<RegeneratedProposal> RegenStage(
    const VideoData& video, const std::vector<DenseMap>& pooled,
    const std::vector<RegionProposal>& scored, const PipelineConfig& cfg);
MiningResult TrackStage(const VideoData& video,
                        const std::vector<RegeneratedProposal>& regenerated,
                        const PipelineConfig& cfg);
SelectionResult SelectStage(const MiningResult& mining,
                            const PipelineConfig& cfg);
// Pools the tracks named by `selected` (all tracks when nullptr).
std::vector<DenseMap> TrackPoolStage(const VideoData& video,
                                     const MiningResult& mining,
                                     const std::vector<std::size_t>* selected);
// class_maps[k][t] is the confidence map of class k on frame t.
std::vector<LabelMap> SegmentStage(
    const VideoData& video,
    const std::vector<std::vector<DenseMap>>& class_maps,
    const PipelineConfig& cfg);

struct RunOptions {
  std::filesystem::path out_dir;
  std::optional<Stage> stop_after;
  Baseline baseline = Baseline::kNone;
};

struct RunOutput {
  std::vector<LabelMap> labels;  // empty when stopped before segmentation
  std::optional<VideoEvalInput> eval_input;
  std::optional<EvalReport> report;
};

// Runs the stages in order for one video, writing every artifact under
// options.out_dir as soon as its stage completes. Stage failures surface as
// StageError (or ValidationError for bad input) naming the stage.
RunOutput RunPipeline(const VideoManifest& manifest, const PipelineConfig& cfg,
                      const RunOptions& options);

// Runs one stage from the artifacts of the previous stages in `out_dir`.
void RunSingleStage(Stage stage, const VideoManifest& manifest,
                    const PipelineConfig& cfg, const RunOptions& options);

// Artifact locations inside an output directory.
namespace artifacts {
std::filesystem::path Config(const std::filesystem::path& dir);
std::filesystem::path Scored(const std::filesystem::path& dir,
                             const std::string& cls);
std::filesystem::path Pooled(const std::filesystem::path& dir,
                             const std::string& cls, int t);
std::filesystem::path Regenerated(const std::filesystem::path& dir,
                                  const std::string& cls);
std::filesystem::path Tracks(const std::filesystem::path& dir,
                             const std::string& cls);
std::filesystem::path Instance(const std::filesystem::path& dir,
                               const std::string& cls);
std::filesystem::path Selection(const std::filesystem::path& dir,
                                const std::string& cls);
std::filesystem::path TrackPooled(const std::filesystem::path& dir,
                                  const std::string& cls, int t);
std::filesystem::path Labels(const std::filesystem::path& dir, int t);
std::filesystem::path Eval(const std::filesystem::path& dir);
}  // namespace artifacts

}  // namespace trackcut

#endif  // TRACKCUT_PIPELINE_H_
