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

#ifndef TRACKCUT_BINARY_MASK_H_
#define TRACKCUT_BINARY_MASK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trackcut/geometry.h"

namespace trackcut {

// A maximal stretch of set pixels in row-major order. May wrap across rows.
struct Run {
  std::uint32_t start = 0;
  std::uint32_t length = 0;

  std::uint32_t end() const { return start + length; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Run-length encoded binary mask. Runs are sorted, non-empty, and
// non-touching (adjacent runs are merged on construction), so the
// encoding of a pixel set is unique.
class BinaryMask {
 public:
  explicit BinaryMask(FrameSize size) : size_(size) {}

  // Runs must be sorted, non-overlapping, non-empty and inside the frame.
  static BinaryMask FromRuns(FrameSize size, std::vector<Run> runs);
  static BinaryMask FromPixels(FrameSize size,
                               std::span<const std::uint8_t> pixels);
  static BinaryMask FromBox(FrameSize size, const BoundingBox& box);

  // "w h; start:len start:len ..."
  static BinaryMask Parse(std::string_view text);
  std::string ToString() const;

  const FrameSize& size() const { return size_; }
  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  long long Area() const;

  bool Contains(int x, int y) const;
  std::vector<std::uint8_t> ToPixels() const;

  // Tight half-open box of the set pixels; nullopt for an empty mask.
  std::optional<BoundingBox> TightBox() const;

  long long IntersectionArea(const BinaryMask& other) const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  FrameSize size_;
  std::vector<Run> runs_;
};

inline long long MaskArea(const BinaryMask& mask) { return mask.Area(); }

}  // namespace trackcut

#endif  // TRACKCUT_BINARY_MASK_H_
