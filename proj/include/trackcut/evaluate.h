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

#ifndef TRACKCUT_EVALUATE_H_
#define TRACKCUT_EVALUATE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trackcut/dense_map.h"

namespace trackcut {

// Predictions and ground truth of one video. Label k > 0 in either map
// denotes classes[k - 1]; 0 is background. Frames whose ground truth is
// nullopt are not annotated and are skipped.
struct VideoEvalInput {
  std::string video_id;
  std::vector<std::string> classes;
  std::vector<LabelMap> predicted;
  std::vector<std::optional<LabelMap>> groundtruth;
};

struct IouCount {
  long long intersection = 0;
  long long union_ = 0;
  double Iou() const {
    return union_ == 0 ? 0.0
                       : static_cast<double>(intersection) /
                             static_cast<double>(union_);
  }
};

// A class is present when its union over the evaluated pixels is non-empty;
// absent classes get no entry. Averages are arithmetic means over present
// classes and over videos with at least one present class.
struct EvalReport {
  std::map<std::string, IouCount> per_class;  // pooled over every video
  std::map<std::string, double> per_video;    // mean over present classes
  double class_average = 0.0;
  double video_average = 0.0;
  int annotated_frames = 0;
};

// Throws ValidationError on size or label mismatches and when no frame
// carries ground truth.
EvalReport Evaluate(std::span<const VideoEvalInput> videos);

std::string FormatReport(const EvalReport& report);

}  // namespace trackcut

#endif  // TRACKCUT_EVALUATE_H_
