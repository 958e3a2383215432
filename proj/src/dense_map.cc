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

#include "trackcut/dense_map.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "trackcut/errors.h"

namespace trackcut {

DenseMap::DenseMap(FrameSize size, std::vector<double> values)
    : size_(size), values_(std::move(values)) {
  if (values_.size() != size_.pixels()) {
    throw ValidationError("dense map length " +
                          std::to_string(values_.size()) +
                          " does not match frame size");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("dense map value not finite");
  }
}

void DenseMap::CheckRange(double lo, double hi, const char* what) const {
  for (double v : values_) {
    if (v < lo || v > hi) {
      throw ValidationError(std::string(what) + " value " + std::to_string(v) +
                            " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
  }
}

LabelMap::LabelMap(FrameSize size, std::vector<std::int32_t> values)
    : size_(size), values_(std::move(values)) {
  if (values_.size() != size_.pixels()) {
    throw ValidationError("label map length does not match frame size");
  }
}

std::int32_t LabelMap::MaxLabel() const {
  return *std::max_element(values_.begin(), values_.end());
}

}  // namespace trackcut
