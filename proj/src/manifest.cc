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

#include "trackcut/manifest.h"

#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

#include "trackcut/errors.h"
#include "trackcut/io.h"
#include "trackcut/key_value.h"

namespace trackcut {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) {
      throw ValidationError("manifest: empty list item in '" + s + "'");
    }
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

void RequireFile(const fs::path& path, const std::string& what) {
  if (!fs::is_regular_file(path)) {
    throw ValidationError("manifest: missing " + what + " file " +
                          path.string());
  }
}

}  // namespace

std::string ExpandPattern(const std::string& pattern, int t) {
  char index[16];
  std::snprintf(index, sizeof(index), "%04d", t);
  std::string out = pattern;
  for (std::size_t pos = out.find("{t}"); pos != std::string::npos;
       pos = out.find("{t}", pos)) {
    out.replace(pos, 3, index);
  }
  return out;
}

fs::path VideoManifest::Resolve(const std::string& pattern, int t) const {
  const fs::path p(ExpandPattern(pattern, t));
  return p.is_absolute() ? p : base_dir / p;
}

fs::path VideoManifest::ProposalPath(std::size_t class_index) const {
  return Resolve(proposals.at(class_index), 0);
}

void VideoManifest::Validate() const {
  if (video_id.empty()) throw ValidationError("manifest: empty video_id");
  if (frame_count < 1) throw ValidationError("manifest: frame_count < 1");
  if (classes.empty()) throw ValidationError("manifest: class labels empty");
  if (feature_dim < 1) throw ValidationError("manifest: feature_dim < 1");
  if (proposals.size() != classes.size()) {
    throw ValidationError("manifest: one proposal file per class required");
  }
  std::set<std::string> unique(classes.begin(), classes.end());
  if (unique.size() != classes.size()) {
    throw ValidationError("manifest: duplicate class label");
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    RequireFile(ProposalPath(k), "proposal");
  }
  for (int t = 0; t < frame_count; ++t) {
    RequireFile(Resolve(frames, t), "frame");
    RequireFile(Resolve(motion, t), "motion");
    if (!superpixels.empty()) RequireFile(Resolve(superpixels, t), "superpixel");
  }
  for (int t = 0; t + 1 < frame_count; ++t) {
    RequireFile(Resolve(flow_u, t), "flow");
    RequireFile(Resolve(flow_v, t), "flow");
  }
  for (int t : groundtruth_frames) {
    if (t < 0 || t >= frame_count) {
      throw ValidationError("manifest: groundtruth frame outside video");
    }
    RequireFile(Resolve(groundtruth, t), "groundtruth");
  }
}

VideoManifest ParseManifest(const std::string& text, const fs::path& base_dir,
                            const std::string& origin) {
  const KeyValues kv = KeyValues::Parse(text, origin);
  VideoManifest m;
  m.base_dir = base_dir;
  m.video_id = kv.Get("video_id");
  m.frame_count = static_cast<int>(kv.GetInt("frame_count"));
  m.size = FrameSize(static_cast<int>(kv.GetInt("width")),
                     static_cast<int>(kv.GetInt("height")));
  m.classes = SplitList(kv.Get("classes"));
  m.feature_dim = static_cast<int>(kv.GetInt("feature_dim"));
  m.frames = kv.Get("frames");
  m.motion = kv.Get("motion");
  m.flow_u = kv.Get("flow_u");
  m.flow_v = kv.Get("flow_v");
  m.superpixels = kv.GetOr("superpixels", "");
  m.groundtruth = kv.GetOr("groundtruth", "");

  std::vector<std::string> known = {
      "video_id", "frame_count", "width",  "height",      "classes",
      "feature_dim", "frames",   "motion", "flow_u",      "flow_v",
      "superpixels", "groundtruth", "groundtruth_frames"};
  if (kv.Has("proposals")) {
    if (m.classes.size() != 1) {
      throw ValidationError(origin +
                            ": plain 'proposals' needs exactly one class");
    }
    m.proposals.push_back(kv.Get("proposals"));
    known.push_back("proposals");
  } else {
    for (const std::string& c : m.classes) {
      m.proposals.push_back(kv.Get("proposals." + c));
      known.push_back("proposals." + c);
    }
  }
  kv.RejectUnknown(known);

  if (kv.Has("groundtruth_frames")) {
    if (m.groundtruth.empty()) {
      throw ValidationError(origin + ": groundtruth_frames without groundtruth");
    }
    for (const std::string& s : SplitList(kv.Get("groundtruth_frames"))) {
      int t = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ValidationError(origin + ": bad groundtruth frame '" + s + "'");
      }
      if (t < 0 || t >= m.frame_count) {
        throw ValidationError(origin + ": groundtruth frame " + s + " out of range");
      }
      m.groundtruth_frames.push_back(t);
    }
    std::set<int> unique(m.groundtruth_frames.begin(),
                         m.groundtruth_frames.end());
    m.groundtruth_frames.assign(unique.begin(), unique.end());
  } else if (!m.groundtruth.empty()) {
    for (int t = 0; t < m.frame_count; ++t) m.groundtruth_frames.push_back(t);
  }
  return m;
}

VideoManifest LoadManifest(const fs::path& path) {
  const fs::path base = path.has_parent_path() ? path.parent_path() : ".";
  VideoManifest m = ParseManifest(io::ReadText(path), base, path.string());
  m.Validate();
  return m;
}

std::string FormatManifest(const VideoManifest& m) {
  std::ostringstream out;
  out << "video_id = " << m.video_id << '\n'
      << "frame_count = " << m.frame_count << '\n'
      << "width = " << m.size.width << '\n'
      << "height = " << m.size.height << '\n'
      << "classes = ";
  for (std::size_t k = 0; k < m.classes.size(); ++k) {
    out << (k ? "," : "") << m.classes[k];
  }
  out << '\n' << "feature_dim = " << m.feature_dim << '\n'
      << "frames = " << m.frames << '\n';
  for (std::size_t k = 0; k < m.classes.size(); ++k) {
    out << "proposals." << m.classes[k] << " = " << m.proposals[k] << '\n';
  }
  out << "motion = " << m.motion << '\n'
      << "flow_u = " << m.flow_u << '\n'
      << "flow_v = " << m.flow_v << '\n';
  if (!m.superpixels.empty()) out << "superpixels = " << m.superpixels << '\n';
  if (!m.groundtruth.empty()) {
    out << "groundtruth = " << m.groundtruth << '\n' << "groundtruth_frames = ";
    for (std::size_t i = 0; i < m.groundtruth_frames.size(); ++i) {
      out << (i ? "," : "") << m.groundtruth_frames[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace trackcut
