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

#ifndef TRACKCUT_GEOMETRY_H_
#define TRACKCUT_GEOMETRY_H_

#include <cstddef>
#include <string>

namespace trackcut {

struct FrameSize {
  int width = 1;
  int height = 1;

  FrameSize() = default;
  // Throws ValidationError unless width >= 1 and height >= 1.
  FrameSize(int w, int h);

  std::size_t pixels() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  bool Contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }

  friend bool operator==(const FrameSize&, const FrameSize&) = default;
};

// Half-open pixel box [x0, x1) x [y0, y1). Construction rejects empty boxes.
class BoundingBox {
 public:
  BoundingBox(int x0, int y0, int x1, int y1);

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int x1() const { return x1_; }
  int y1() const { return y1_; }
  int width() const { return x1_ - x0_; }
  int height() const { return y1_ - y0_; }
  long long Area() const {
    return static_cast<long long>(width()) * static_cast<long long>(height());
  }

  // Translated copy, clamped to the frame. A box pushed entirely outside
  // keeps a one-pixel sliver on the nearest border.
  BoundingBox Shifted(int dx, int dy, const FrameSize& frame) const;
  BoundingBox ClampedTo(const FrameSize& frame) const;

  std::string ToString() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  int x0_, y0_, x1_, y1_;
};

double Iou(const BoundingBox& a, const BoundingBox& b);

// Moves every side outward by `margin` pixels and clamps to the frame.
BoundingBox ExpandBox(const BoundingBox& box, int margin,
                      const FrameSize& frame);

}  // namespace trackcut

#endif  // TRACKCUT_GEOMETRY_H_
