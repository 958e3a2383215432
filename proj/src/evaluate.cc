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

#include "trackcut/evaluate.h"

#include <sstream>

#include "trackcut/errors.h"
#include "trackcut/io.h"

namespace trackcut {

namespace {

void CheckLabels(const LabelMap& map, std::size_t classes, const char* what) {
  for (std::int32_t v : map.values()) {
    if (v < 0 || static_cast<std::size_t>(v) > classes) {
      throw ValidationError(std::string("evaluate: ") + what +
                            " label outside the class list");
    }
  }
}

}  // namespace

EvalReport Evaluate(std::span<const VideoEvalInput> videos) {
  EvalReport report;
  for (const VideoEvalInput& video : videos) {
    if (video.predicted.size() != video.groundtruth.size()) {
      throw ValidationError("evaluate: prediction/groundtruth frame count differ");
    }
    const std::size_t classes = video.classes.size();
    std::vector<IouCount> counts(classes);
    for (std::size_t t = 0; t < video.predicted.size(); ++t) {
      if (!video.groundtruth[t]) continue;
      const LabelMap& pred = video.predicted[t];
      const LabelMap& gt = *video.groundtruth[t];
      if (!(pred.size() == gt.size())) {
        throw ValidationError("evaluate: prediction/groundtruth size differ");
      }
      CheckLabels(pred, classes, "predicted");
      CheckLabels(gt, classes, "groundtruth");
      ++report.annotated_frames;
      const auto p = pred.values();
      const auto g = gt.values();
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == g[i]) {
          if (p[i] > 0) {
            ++counts[p[i] - 1].intersection;
            ++counts[p[i] - 1].union_;
          }
          continue;
        }
        if (p[i] > 0) ++counts[p[i] - 1].union_;
        if (g[i] > 0) ++counts[g[i] - 1].union_;
      }
    }
    double sum = 0.0;
    int present = 0;
    for (std::size_t k = 0; k < classes; ++k) {
      if (counts[k].union_ == 0) continue;
      IouCount& pooled = report.per_class[video.classes[k]];
      pooled.intersection += counts[k].intersection;
      pooled.union_ += counts[k].union_;
      sum += counts[k].Iou();
      ++present;
    }
    if (present > 0) report.per_video[video.video_id] = sum / present;
  }
  if (report.annotated_frames == 0) {
    throw ValidationError("evaluate: no annotated frames");
  }
  double sum = 0.0;
  for (const auto& [name, count] : report.per_class) sum += count.Iou();
  if (!report.per_class.empty()) {
    report.class_average = sum / static_cast<double>(report.per_class.size());
  }
  sum = 0.0;
  for (const auto& [id, iou] : report.per_video) sum += iou;
  if (!report.per_video.empty()) {
    report.video_average = sum / static_cast<double>(report.per_video.size());
  }
  return report;
}

std::string FormatReport(const EvalReport& report) {
  std::ostringstream out;
  out << "annotated_frames = " << report.annotated_frames << '\n';
  for (const auto& [name, count] : report.per_class) {
    out << "class." << name << " = " << io::FormatDouble(count.Iou()) << '\n';
  }
  for (const auto& [id, iou] : report.per_video) {
    out << "video." << id << " = " << io::FormatDouble(iou) << '\n';
  }
  out << "class_average = " << io::FormatDouble(report.class_average) << '\n'
      << "video_average = " << io::FormatDouble(report.video_average) << '\n';
  return out.str();
}

}  // namespace trackcut
