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

#include "trackcut/config.h"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "trackcut/errors.h"
#include "trackcut/io.h"
#include "trackcut/key_value.h"

namespace trackcut {

namespace {

const char* NormalizationName(Normalization n) {
  return n == Normalization::kPerFrameMax ? "per_frame_max"
                                          : "per_frame_minmax";
}

Normalization ParseNormalization(const std::string& s) {
  if (s == "per_frame_max") return Normalization::kPerFrameMax;
  if (s == "per_frame_minmax") return Normalization::kPerFrameMinMax;
  throw ValidationError("config: unknown scoring.normalization '" + s + "'");
}

std::uint64_t ParseSeed(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(what + ": seed must be a non-negative integer");
  }
  return v;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(scoring.epsilon > 0.0)) {
    throw ValidationError("config: scoring.epsilon must be > 0");
  }
  mining.Validate();
  if (!(delta >= 0.0) || !(lambda >= 0.0)) {
    throw ValidationError("config: selection.delta and lambda must be >= 0");
  }
  if (!(segment.lambda_o >= 0.0) || !(segment.lambda_p >= 0.0)) {
    throw ValidationError("config: segment lambdas must be >= 0");
  }
  if (!(segment.prob_floor > 0.0 && segment.prob_floor < 1.0)) {
    throw ValidationError("config: segment.prob_floor must be in (0,1)");
  }
  if (segment.gmm.components < 1 || segment.gmm.max_iters < 1 ||
      !(segment.gmm.tol >= 0.0) || !(segment.gmm.cov_epsilon > 0.0)) {
    throw ValidationError("config: bad gmm settings");
  }
  if (grid_cell < 1) throw ValidationError("config: segment.grid_cell < 1");
}

PipelineConfig ParseConfig(const std::string& text, const std::string& origin) {
  const KeyValues kv = KeyValues::Parse(text, origin);
  kv.RejectUnknown({"scoring.normalization", "scoring.epsilon", "pool.weight",
                    "mining.levels", "mining.connectivity", "mining.iou_absorb",
                    "mining.min_region_area", "mining.seed", "mining.tracker",
                    "selection.delta", "selection.lambda", "selection.budget",
                    "selection.lazy", "segment.lambda_o", "segment.lambda_p",
                    "segment.fg_threshold", "segment.bg_threshold",
                    "segment.prob_floor", "segment.grid_cell",
                    "gmm.components", "gmm.seed", "gmm.max_iters", "gmm.tol",
                    "gmm.cov_epsilon"});
  PipelineConfig c;
  if (kv.Has("scoring.normalization")) {
    c.scoring.normalization = ParseNormalization(kv.Get("scoring.normalization"));
  }
  if (kv.Has("scoring.epsilon")) c.scoring.epsilon = kv.GetDouble("scoring.epsilon");
  if (kv.Has("pool.weight")) {
    const std::string& w = kv.Get("pool.weight");
    if (w == "rescored") {
      c.pool_weight = PoolWeight::kRescored;
    } else if (w == "classifier") {
      c.pool_weight = PoolWeight::kClassifier;
    } else {
      throw ValidationError("config: unknown pool.weight '" + w + "'");
    }
  }
  if (kv.Has("mining.levels")) c.mining.levels = static_cast<int>(kv.GetInt("mining.levels"));
  if (kv.Has("mining.connectivity")) {
    const long long conn = kv.GetInt("mining.connectivity");
    if (conn != 4 && conn != 8) {
      throw ValidationError("config: mining.connectivity must be 4 or 8");
    }
    c.mining.connectivity = conn == 4 ? Connectivity::kFour : Connectivity::kEight;
  }
  if (kv.Has("mining.iou_absorb")) c.mining.iou_absorb = kv.GetDouble("mining.iou_absorb");
  if (kv.Has("mining.min_region_area")) {
    c.mining.min_region_area = static_cast<int>(kv.GetInt("mining.min_region_area"));
  }
  if (kv.Has("mining.seed")) c.mining.rng_seed = ParseSeed(kv.Get("mining.seed"), origin);
  if (kv.Has("mining.tracker")) {
    const std::string& t = kv.Get("mining.tracker");
    if (t == "flow") {
      c.tracker = TrackerKind::kFlow;
    } else if (t == "stationary") {
      c.tracker = TrackerKind::kStationary;
    } else {
      throw ValidationError("config: unknown mining.tracker '" + t + "'");
    }
  }
  if (kv.Has("selection.delta")) c.delta = kv.GetDouble("selection.delta");
  if (kv.Has("selection.lambda")) c.lambda = kv.GetDouble("selection.lambda");
  if (kv.Has("selection.budget")) {
    const long long b = kv.GetInt("selection.budget");
    if (b < 0) throw ValidationError("config: selection.budget must be >= 0");
    c.budget = static_cast<std::size_t>(b);
  }
  if (kv.Has("selection.lazy")) c.lazy_greedy = kv.GetBool("selection.lazy");
  if (kv.Has("segment.lambda_o")) c.segment.lambda_o = kv.GetDouble("segment.lambda_o");
  if (kv.Has("segment.lambda_p")) c.segment.lambda_p = kv.GetDouble("segment.lambda_p");
  if (kv.Has("segment.fg_threshold")) {
    c.segment.fg_threshold = kv.GetDouble("segment.fg_threshold");
  }
  if (kv.Has("segment.bg_threshold")) {
    c.segment.bg_threshold = kv.GetDouble("segment.bg_threshold");
  }
  if (kv.Has("segment.prob_floor")) c.segment.prob_floor = kv.GetDouble("segment.prob_floor");
  if (kv.Has("segment.grid_cell")) c.grid_cell = static_cast<int>(kv.GetInt("segment.grid_cell"));
  if (kv.Has("gmm.components")) {
    c.segment.gmm.components = static_cast<int>(kv.GetInt("gmm.components"));
  }
  if (kv.Has("gmm.seed")) c.segment.gmm.seed = ParseSeed(kv.Get("gmm.seed"), origin);
  if (kv.Has("gmm.max_iters")) {
    c.segment.gmm.max_iters = static_cast<int>(kv.GetInt("gmm.max_iters"));
  }
  if (kv.Has("gmm.tol")) c.segment.gmm.tol = kv.GetDouble("gmm.tol");
  if (kv.Has("gmm.cov_epsilon")) c.segment.gmm.cov_epsilon = kv.GetDouble("gmm.cov_epsilon");
  c.Validate();
  return c;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(io::ReadText(path), path.string());
}

std::string FormatConfig(const PipelineConfig& c) {
  using io::FormatDouble;
  std::ostringstream out;
  out << "# proposal scoring\n"
      << "scoring.normalization = " << NormalizationName(c.scoring.normalization) << '\n'
      << "scoring.epsilon = " << FormatDouble(c.scoring.epsilon) << '\n'
      << "# confidence pooling: rescored | classifier\n"
      << "pool.weight = "
      << (c.pool_weight == PoolWeight::kRescored ? "rescored" : "classifier") << '\n'
      << "# proposal mining\n"
      << "mining.levels = " << c.mining.levels << '\n'
      << "mining.connectivity = "
      << (c.mining.connectivity == Connectivity::kFour ? 4 : 8) << '\n'
      << "mining.iou_absorb = " << FormatDouble(c.mining.iou_absorb) << '\n'
      << "mining.min_region_area = " << c.mining.min_region_area << '\n'
      << "mining.seed = " << c.mining.rng_seed << '\n'
      << "mining.tracker = "
      << (c.tracker == TrackerKind::kFlow ? "flow" : "stationary") << '\n'
      << "# track selection (budget 0 = no limit)\n"
      << "selection.delta = " << FormatDouble(c.delta) << '\n'
      << "selection.lambda = " << FormatDouble(c.lambda) << '\n'
      << "selection.budget = " << c.budget << '\n'
      << "selection.lazy = " << (c.lazy_greedy ? "true" : "false") << '\n'
      << "# segmentation\n"
      << "segment.lambda_o = " << FormatDouble(c.segment.lambda_o) << '\n'
      << "segment.lambda_p = " << FormatDouble(c.segment.lambda_p) << '\n'
      << "segment.fg_threshold = " << FormatDouble(c.segment.fg_threshold) << '\n'
      << "segment.bg_threshold = " << FormatDouble(c.segment.bg_threshold) << '\n'
      << "segment.prob_floor = " << FormatDouble(c.segment.prob_floor) << '\n'
      << "segment.grid_cell = " << c.grid_cell << '\n'
      << "# colour models\n"
      << "gmm.components = " << c.segment.gmm.components << '\n'
      << "gmm.seed = " << c.segment.gmm.seed << '\n'
      << "gmm.max_iters = " << c.segment.gmm.max_iters << '\n'
      << "gmm.tol = " << FormatDouble(c.segment.gmm.tol) << '\n'
      << "gmm.cov_epsilon = " << FormatDouble(c.segment.gmm.cov_epsilon) << '\n';
  return out.str();
}

void ApplySeedOverride(PipelineConfig& cfg) {
  const char* env = std::getenv("TRACKCUT_SEED");
  if (env == nullptr) return;
  const std::uint64_t seed = ParseSeed(env, "TRACKCUT_SEED");
  cfg.mining.rng_seed = seed;
  cfg.segment.gmm.seed = seed;
}

}  // namespace trackcut
