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

#ifndef TRACKCUT_MANIFEST_H_
#define TRACKCUT_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trackcut/geometry.h"

namespace trackcut {

// Describes one video. Per-frame paths are patterns in which "{t}" expands
// to the zero-padded 4-digit frame (or transition) index; relative paths
// resolve against the manifest's directory.
//
//   video_id = clip01
//   frame_count = 10
//   width = 64
//   height = 64
//   classes = car,dog
//   feature_dim = 32
//   frames = frames/{t}.ppm
//   proposals.car = car.proposals      (plain "proposals" with one class)
//   proposals.dog = dog.proposals
//   motion = motion/{t}.fmap
//   flow_u = flow/u_{t}.fmap            (frame_count - 1 transitions)
//   flow_v = flow/v_{t}.fmap
//   superpixels = sp/{t}.imap           (optional)
//   groundtruth = gt/{t}.imap           (optional)
//   groundtruth_frames = 0,5            (optional; default every frame)
struct VideoManifest {
  std::filesystem::path base_dir;
  std::string video_id;
  int frame_count = 0;
  FrameSize size;
  std::vector<std::string> classes;
  int feature_dim = 0;
  std::string frames;
  std::vector<std::string> proposals;  // aligned with classes
  std::string motion;
  std::string flow_u;
  std::string flow_v;
  std::string superpixels;  // empty when absent
  std::string groundtruth;  // empty when absent
  std::vector<int> groundtruth_frames;

  std::filesystem::path Resolve(const std::string& pattern, int t) const;
  std::filesystem::path ProposalPath(std::size_t class_index) const;
  bool HasGroundTruth() const { return !groundtruth.empty(); }

  // Checks field ranges and that every referenced file exists.
  void Validate() const;
};

VideoManifest ParseManifest(const std::string& text,
                            const std::filesystem::path& base_dir,
                            const std::string& origin);
VideoManifest LoadManifest(const std::filesystem::path& path);
std::string FormatManifest(const VideoManifest& manifest);

// "{t}" -> zero-padded 4-digit index.
std::string ExpandPattern(const std::string& pattern, int t);

}  // namespace trackcut

#endif  // TRACKCUT_MANIFEST_H_
