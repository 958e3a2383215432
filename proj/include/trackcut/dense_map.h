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

#ifndef TRACKCUT_DENSE_MAP_H_
#define TRACKCUT_DENSE_MAP_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "trackcut/geometry.h"

namespace trackcut {

// Row-major real-valued raster. Motion cues, confidence maps and flow
// components all live in one of these.
class DenseMap {
 public:
  explicit DenseMap(FrameSize size, double fill = 0.0)
      : size_(size), values_(size.pixels(), fill) {}
  // Throws if the buffer length is wrong or any value is non-finite.
  DenseMap(FrameSize size, std::vector<double> values);

  const FrameSize& size() const { return size_; }
  double at(int x, int y) const { return values_[size_.Index(x, y)]; }
  double& at(int x, int y) { return values_[size_.Index(x, y)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Throws unless every value lies in [lo, hi].
  void CheckRange(double lo, double hi, const char* what) const;

  friend bool operator==(const DenseMap&, const DenseMap&) = default;

 private:
  FrameSize size_;
  std::vector<double> values_;
};

// Row-major integer raster: superpixel labels, segmentations, ground truth.
class LabelMap {
 public:
  explicit LabelMap(FrameSize size, std::int32_t fill = 0)
      : size_(size), values_(size.pixels(), fill) {}
  LabelMap(FrameSize size, std::vector<std::int32_t> values);

  const FrameSize& size() const { return size_; }
  std::int32_t at(int x, int y) const { return values_[size_.Index(x, y)]; }
  std::int32_t& at(int x, int y) { return values_[size_.Index(x, y)]; }
  std::span<const std::int32_t> values() const { return values_; }
  std::span<std::int32_t> values() { return values_; }

  std::int32_t MaxLabel() const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  FrameSize size_;
  std::vector<std::int32_t> values_;
};

using Rgb = std::array<double, 3>;

// RGB frame with channels in [0, 1].
class RgbImage {
 public:
  explicit RgbImage(FrameSize size) : size_(size), pixels_(size.pixels()) {}

  const FrameSize& size() const { return size_; }
  const Rgb& at(int x, int y) const { return pixels_[size_.Index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[size_.Index(x, y)]; }
  std::span<const Rgb> pixels() const { return pixels_; }
  std::span<Rgb> pixels() { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  FrameSize size_;
  std::vector<Rgb> pixels_;
};

// Horizontal (u) and vertical (v) displacement from frame t to t+1.
struct FlowField {
  DenseMap u;
  DenseMap v;
};

}  // namespace trackcut

#endif  // TRACKCUT_DENSE_MAP_H_
