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

#include "trackcut/geometry.h"

#include <algorithm>
#include <sstream>

#include "trackcut/errors.h"

namespace trackcut {

FrameSize::FrameSize(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw ValidationError("frame size must be positive, got " +
                          std::to_string(w) + "x" + std::to_string(h));
  }
}

BoundingBox::BoundingBox(int x0, int y0, int x1, int y1)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (x0 >= x1 || y0 >= y1) {
    throw ValidationError("degenerate bounding box [" + std::to_string(x0) +
                          "," + std::to_string(y0) + "," + std::to_string(x1) +
                          "," + std::to_string(y1) + ")");
  }
}

BoundingBox BoundingBox::ClampedTo(const FrameSize& frame) const {
  int nx0 = std::clamp(x0_, 0, frame.width - 1);
  int ny0 = std::clamp(y0_, 0, frame.height - 1);
  int nx1 = std::clamp(x1_, nx0 + 1, frame.width);
  int ny1 = std::clamp(y1_, ny0 + 1, frame.height);
  return BoundingBox(nx0, ny0, nx1, ny1);
}

BoundingBox BoundingBox::Shifted(int dx, int dy, const FrameSize& frame) const {
  int w = std::min(width(), frame.width);
  int h = std::min(height(), frame.height);
  int nx0 = std::clamp(x0_ + dx, 0, frame.width - w);
  int ny0 = std::clamp(y0_ + dy, 0, frame.height - h);
  return BoundingBox(nx0, ny0, nx0 + w, ny0 + h);
}

std::string BoundingBox::ToString() const {
  std::ostringstream os;
  os << "[" << x0_ << "," << y0_ << "," << x1_ << "," << y1_ << ")";
  return os.str();
}

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const long long iw =
      std::max(0, std::min(a.x1(), b.x1()) - std::max(a.x0(), b.x0()));
  const long long ih =
      std::max(0, std::min(a.y1(), b.y1()) - std::max(a.y0(), b.y0()));
  const long long inter = iw * ih;
  const long long uni = a.Area() + b.Area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BoundingBox ExpandBox(const BoundingBox& box, int margin,
                      const FrameSize& frame) {
  if (margin < 0) throw ValidationError("expand margin must be >= 0");
  return BoundingBox(box.x0() - margin, box.y0() - margin, box.x1() + margin,
                     box.y1() + margin)
      .ClampedTo(frame);
}

}  // namespace trackcut
