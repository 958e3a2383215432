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
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "trackcut/config.h"
#include "trackcut/errors.h"
#include "trackcut/evaluate.h"
#include "trackcut/io.h"
#include "trackcut/manifest.h"
#include "trackcut/pipeline.h"
#include "trackcut/selection.h"
#include "trackcut/synthetic.h"

namespace fs = std::filesystem;
using namespace trackcut;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitStage = 3;

struct Common {
  std::string config_path;
  std::string baseline = "none";
};

PipelineConfig ResolveConfig(const Common& common) {
  PipelineConfig cfg = common.config_path.empty()
                           ? PipelineConfig{}
                           : LoadConfig(common.config_path);
  ApplySeedOverride(cfg);
  cfg.Validate();
  return cfg;
}

std::vector<int> ParseInts(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("expected comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

int RunVideos(const std::vector<std::string>& manifests,
              const PipelineConfig& cfg, const fs::path& out_dir,
              std::optional<Stage> stop_after, Baseline baseline, int jobs) {
  const std::size_t n = manifests.size();
  std::vector<VideoManifest> loaded;
  for (const std::string& m : manifests) loaded.push_back(LoadManifest(m));
  std::vector<fs::path> dirs;
  for (const VideoManifest& m : loaded) {
    dirs.push_back(n == 1 ? out_dir : out_dir / m.video_id);
  }
  std::sort(dirs.begin(), dirs.end());
  if (std::adjacent_find(dirs.begin(), dirs.end()) != dirs.end()) {
    throw ValidationError("run: duplicate video_id across manifests");
  }
  fs::create_directories(out_dir);
  io::WriteText(artifacts::Config(out_dir), FormatConfig(cfg));

  std::vector<RunOutput> outputs(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        RunOptions options;
        options.out_dir = n == 1 ? out_dir : out_dir / loaded[i].video_id;
        options.stop_after = stop_after;
        options.baseline = baseline;
        outputs[i] = RunPipeline(loaded[i], cfg, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  std::vector<VideoEvalInput> evals;
  for (RunOutput& o : outputs) {
    if (o.eval_input) evals.push_back(std::move(*o.eval_input));
  }
  if (!evals.empty()) {
    const EvalReport report = Evaluate(evals);
    if (n > 1) io::WriteText(artifacts::Eval(out_dir), FormatReport(report));
    std::cout << FormatReport(report);
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Semantic video object segmentation from region proposals"};
  app.require_subcommand(1);

  // Stage subcommands share one shape.
  struct StageCommand {
    CLI::App* app;
    Stage stage;
  };
  std::string manifest_path, out_dir;
  Common common;
  std::vector<StageCommand> stage_commands;
  std::string instance_path;
  bool plain_greedy = false;
  for (Stage stage : {Stage::kScore, Stage::kPool, Stage::kRegen, Stage::kTrack,
                      Stage::kSelect, Stage::kSegment}) {
    CLI::App* sub = app.add_subcommand(
        StageName(stage),
        std::string("Run the ") + StageName(stage) +
            " stage from the previous stage's artifacts in --out");
    if (stage == Stage::kSelect) {
      sub->add_option("--manifest", manifest_path, "Video manifest");
      sub->add_option("--instance", instance_path,
                      "Solve a standalone selection instance file instead");
      sub->add_flag("--plain-greedy", plain_greedy,
                    "Use plain greedy instead of lazy greedy (--instance)");
      sub->add_option("--out", out_dir, "Output directory (or file with --instance)");
    } else {
      sub->add_option("--manifest", manifest_path, "Video manifest")->required();
      sub->add_option("--out", out_dir, "Output directory")->required();
    }
    sub->add_option("--config", common.config_path, "Config file");
    if (stage == Stage::kSelect || stage == Stage::kSegment) {
      sub->add_option("--baseline", common.baseline,
                      "none | pool | track: which maps feed segmentation");
    }
    stage_commands.push_back({sub, stage});
  }

  CLI::App* run = app.add_subcommand("run", "Run the full pipeline");
  std::vector<std::string> run_manifests;
  std::string stop_after;
  int jobs = 1;
  run->add_option("--manifest", run_manifests, "Video manifest (repeatable)")
      ->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--config", common.config_path, "Config file");
  run->add_option("--stop-after", stop_after,
                  "score | pool | regen | track | select");
  run->add_option("--baseline", common.baseline,
                  "none | pool | track: which maps feed segmentation");
  run->add_option("--jobs", jobs, "Videos processed in parallel")
      ->check(CLI::PositiveNumber);

  CLI::App* eval = app.add_subcommand(
      "eval", "Score label maps in <pred>/labels against ground truth");
  std::vector<std::string> eval_manifests, eval_preds;
  eval->add_option("--manifest", eval_manifests, "Video manifest (repeatable)")
      ->required();
  eval->add_option("--pred", eval_preds,
                   "Prediction directory per manifest (repeatable)")
      ->required();
  std::string eval_out;
  eval->add_option("--out", eval_out, "Write the report here as well");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic video");
  SceneSpec spec;
  std::uint64_t seed = 0;
  std::string velocity = "2,0";
  std::string video_id = "synthetic";
  int width = spec.size.width, height = spec.size.height;
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--frames", spec.frames, "Frame count");
  synth->add_option("--width", width, "Frame width");
  synth->add_option("--height", height, "Frame height");
  synth->add_option("--noise", spec.proposal_noise,
                    "Chance that a proposal is a distractor");
  synth->add_option("--colour-noise", spec.colour_noise, "Pixel noise");
  synth->add_option("--decoy-share", spec.decoy_share,
                    "Share of distractors placed on the look-alike decoy");
  synth->add_option("--velocity", velocity, "Object velocity vx,vy");
  synth->add_option("--video-id", video_id, "Video id");
  synth->add_flag("!--no-superpixels", spec.write_superpixels,
                  "Omit superpixel maps from the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  for (const StageCommand& sc : stage_commands) {
    if (!*sc.app) continue;
    if (sc.stage == Stage::kSelect && !instance_path.empty()) {
      const SelectionInstance inst =
          ParseSelectionInstance(io::ReadText(instance_path));
      const SelectionResult result =
          plain_greedy ? GreedySelect(inst) : LazyGreedySelect(inst);
      if (!out_dir.empty()) io::WriteSelection(out_dir, result);
      std::cout << "selected";
      for (std::size_t i : result.selected) std::cout << ' ' << i;
      std::cout << "\nobjective " << io::FormatDouble(result.objective_value)
                << '\n';
      return 0;
    }
    if (manifest_path.empty() || out_dir.empty()) {
      throw ValidationError(std::string(StageName(sc.stage)) +
                            ": --manifest and --out are required");
    }
    RunOptions options;
    options.out_dir = out_dir;
    options.baseline = ParseBaseline(common.baseline);
    RunSingleStage(sc.stage, LoadManifest(manifest_path), ResolveConfig(common),
                   options);
    return 0;
  }
  if (*run) {
    std::optional<Stage> stop;
    if (!stop_after.empty()) stop = ParseStage(stop_after);
    return RunVideos(run_manifests, ResolveConfig(common), out_dir, stop,
                     ParseBaseline(common.baseline), jobs);
  }
  if (*eval) {
    if (eval_manifests.size() != eval_preds.size()) {
      throw ValidationError("eval: one --pred per --manifest required");
    }
    std::vector<VideoEvalInput> inputs;
    for (std::size_t i = 0; i < eval_manifests.size(); ++i) {
      const VideoManifest m = LoadManifest(eval_manifests[i]);
      if (!m.HasGroundTruth()) {
        throw ValidationError("eval: manifest has no groundtruth");
      }
      VideoEvalInput input{m.video_id, m.classes, {}, {}};
      input.groundtruth.assign(static_cast<std::size_t>(m.frame_count),
                               std::nullopt);
      for (int t = 0; t < m.frame_count; ++t) {
        input.predicted.push_back(io::ReadImap(artifacts::Labels(eval_preds[i], t)));
      }
      for (int t : m.groundtruth_frames) {
        input.groundtruth[t] = io::ReadImap(m.Resolve(m.groundtruth, t));
      }
      inputs.push_back(std::move(input));
    }
    const std::string report = FormatReport(Evaluate(inputs));
    if (!eval_out.empty()) io::WriteText(eval_out, report);
    std::cout << report;
    return 0;
  }
  if (*synth) {
    spec.size = FrameSize(width, height);
    const std::vector<int> v = ParseInts(velocity);
    if (v.size() != 2) throw ValidationError("synth: --velocity needs vx,vy");
    spec.objects.front().vx = v[0];
    spec.objects.front().vy = v[1];
    const fs::path manifest =
        WriteSynthetic(GenerateSynthetic(spec, seed), out_dir, video_id);
    std::cout << manifest.string() << '\n';
    return 0;
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const StageError& e) {
    std::cerr << "stage failed: " << e.what() << '\n';
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "stage failed: " << e.what() << '\n';
    return kExitStage;
  }
}
