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

#include "trackcut/binary_mask.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "trackcut/errors.h"

namespace trackcut {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T ParseNumber(std::string_view token, std::string_view what) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ValidationError("RLE: bad " + std::string(what) + " '" +
                          std::string(token) + "'");
  }
  return value;
}

}  // namespace

BinaryMask BinaryMask::FromRuns(FrameSize size, std::vector<Run> runs) {
  BinaryMask mask(size);
  const std::uint64_t limit = size.pixels();
  std::uint64_t prev_end = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Run& r = runs[i];
    if (r.length == 0) throw ValidationError("RLE: zero-length run");
    if (static_cast<std::uint64_t>(r.start) + r.length > limit) {
      throw ValidationError("RLE: run exceeds frame bounds");
    }
    if (i > 0 && r.start < prev_end) {
      throw ValidationError("RLE: runs unsorted or overlapping");
    }
    if (!mask.runs_.empty() && mask.runs_.back().end() == r.start) {
      mask.runs_.back().length += r.length;
    } else {
      mask.runs_.push_back(r);
    }
    prev_end = r.end();
  }
  return mask;
}

BinaryMask BinaryMask::FromPixels(FrameSize size,
                                  std::span<const std::uint8_t> pixels) {
  if (pixels.size() != size.pixels()) {
    throw ValidationError("mask pixel buffer does not match frame size");
  }
  BinaryMask mask(size);
  std::uint32_t i = 0;
  const auto n = static_cast<std::uint32_t>(pixels.size());
  while (i < n) {
    if (!pixels[i]) {
      ++i;
      continue;
    }
    std::uint32_t start = i;
    while (i < n && pixels[i]) ++i;
    mask.runs_.push_back({start, i - start});
  }
  return mask;
}

BinaryMask BinaryMask::FromBox(FrameSize size, const BoundingBox& box) {
  const BoundingBox b = box.ClampedTo(size);
  BinaryMask mask(size);
  for (int y = b.y0(); y < b.y1(); ++y) {
    const auto start = static_cast<std::uint32_t>(size.Index(b.x0(), y));
    const auto len = static_cast<std::uint32_t>(b.width());
    if (!mask.runs_.empty() && mask.runs_.back().end() == start) {
      mask.runs_.back().length += len;
    } else {
      mask.runs_.push_back({start, len});
    }
  }
  return mask;
}

BinaryMask BinaryMask::Parse(std::string_view text) {
  text = Trim(text);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    throw ValidationError("RLE: missing ';' after frame size");
  }
  std::string_view header = Trim(text.substr(0, semi));
  const auto space = header.find(' ');
  if (space == std::string_view::npos) {
    throw ValidationError("RLE: header must be 'w h'");
  }
  const int w = ParseNumber<int>(Trim(header.substr(0, space)), "width");
  const int h = ParseNumber<int>(Trim(header.substr(space + 1)), "height");
  FrameSize size(w, h);

  std::vector<Run> runs;
  std::string_view body = text.substr(semi + 1);
  while (true) {
    body = Trim(body);
    if (body.empty()) break;
    auto sep = body.find(' ');
    std::string_view token = body.substr(0, sep);
    body = sep == std::string_view::npos ? std::string_view{}
                                         : body.substr(sep + 1);
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ValidationError("RLE: run must be 'start:len'");
    }
    runs.push_back(
        {ParseNumber<std::uint32_t>(token.substr(0, colon), "run start"),
         ParseNumber<std::uint32_t>(token.substr(colon + 1), "run length")});
  }
  return FromRuns(size, std::move(runs));
}

std::string BinaryMask::ToString() const {
  std::ostringstream os;
  os << size_.width << ' ' << size_.height << ';';
  for (const Run& r : runs_) os << ' ' << r.start << ':' << r.length;
  return os.str();
}

long long BinaryMask::Area() const {
  long long area = 0;
  for (const Run& r : runs_) area += r.length;
  return area;
}

bool BinaryMask::Contains(int x, int y) const {
  if (!size_.Contains(x, y)) return false;
  const auto idx = static_cast<std::uint32_t>(size_.Index(x, y));
  auto it = std::upper_bound(
      runs_.begin(), runs_.end(), idx,
      [](std::uint32_t v, const Run& r) { return v < r.start; });
  if (it == runs_.begin()) return false;
  --it;
  return idx < it->end();
}

std::vector<std::uint8_t> BinaryMask::ToPixels() const {
  std::vector<std::uint8_t> pixels(size_.pixels(), 0);
  for (const Run& r : runs_) {
    std::fill_n(pixels.begin() + r.start, r.length, std::uint8_t{1});
  }
  return pixels;
}

std::optional<BoundingBox> BinaryMask::TightBox() const {
  if (runs_.empty()) return std::nullopt;
  const auto w = static_cast<std::uint32_t>(size_.width);
  int x0 = size_.width, x1 = 0;
  const int y0 = static_cast<int>(runs_.front().start / w);
  const int y1 = static_cast<int>((runs_.back().end() - 1) / w) + 1;
  for (const Run& r : runs_) {
    const std::uint32_t first_row = r.start / w;
    const std::uint32_t last_row = (r.end() - 1) / w;
    if (first_row != last_row) {
      // Wraps a row boundary, so some row is covered from column 0 and some
      // row up to the last column.
      x0 = 0;
      x1 = size_.width;
      break;
    }
    x0 = std::min(x0, static_cast<int>(r.start % w));
    x1 = std::max(x1, static_cast<int>((r.end() - 1) % w) + 1);
  }
  return BoundingBox(x0, y0, x1, y1);
}

long long BinaryMask::IntersectionArea(const BinaryMask& other) const {
  if (!(size_ == other.size_)) {
    throw ValidationError("mask intersection: frame sizes differ");
  }
  long long total = 0;
  std::size_t i = 0, j = 0;
  while (i < runs_.size() && j < other.runs_.size()) {
    const Run& a = runs_[i];
    const Run& b = other.runs_[j];
    const std::uint32_t lo = std::max(a.start, b.start);
    const std::uint32_t hi = std::min(a.end(), b.end());
    if (hi > lo) total += hi - lo;
    if (a.end() < b.end()) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

}  // namespace trackcut
