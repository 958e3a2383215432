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

#include "trackcut/io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

#include "trackcut/errors.h"

namespace trackcut::io {

namespace {

template <typename T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(b[i], b[sizeof(T) - 1 - i]);
    }
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

std::ofstream OpenOut(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return in;
}

// Reads "<magic> w h\n" and returns the frame size.
FrameSize ReadRasterHeader(std::istream& in, std::string_view magic,
                           const fs::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(path.string() + ": missing header");
  }
  std::istringstream header(line);
  std::string tag;
  int w = 0, h = 0;
  if (!(header >> tag >> w >> h) || tag != magic) {
    throw ValidationError(path.string() + ": bad " + std::string(magic) +
                          " header");
  }
  std::string rest;
  if (header >> rest) {
    throw ValidationError(path.string() + ": trailing header data");
  }
  if (w < 1 || h < 1) {
    throw ValidationError(path.string() + ": non-positive raster size");
  }
  return FrameSize(w, h);
}

template <typename T>
std::vector<T> ReadPayload(std::istream& in, std::size_t count,
                           const fs::path& path) {
  std::vector<T> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(count * sizeof(T)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(T)) {
    throw ValidationError(path.string() + ": truncated payload");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ValidationError(path.string() + ": trailing bytes after payload");
  }
  for (T& v : raw) v = ToLittle(v);
  return raw;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = s.find(sep, begin);
    if (end == std::string_view::npos) {
      parts.push_back(s.substr(begin));
      return parts;
    }
    parts.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
}

double ParseDouble(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(where + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

long long ParseInt(std::string_view s, const std::string& where) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(where + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

FeatureVector ParseFeature(std::string_view s, const std::string& where) {
  FeatureVector f;
  if (s.empty()) return f;
  for (std::string_view part : Split(s, ',')) {
    f.push_back(ParseDouble(part, where));
  }
  return f;
}

std::string FormatFeature(const FeatureVector& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(f[i]);
  }
  return out;
}

std::string FormatIds(const std::vector<std::size_t>& ids) {
  if (ids.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::vector<std::size_t> ParseIds(std::string_view s, const std::string& where) {
  std::vector<std::size_t> ids;
  if (s == "-") return ids;
  for (std::string_view part : Split(s, ',')) {
    const long long v = ParseInt(part, where);
    if (v < 0) throw ValidationError(where + ": negative id");
    ids.push_back(static_cast<std::size_t>(v));
  }
  return ids;
}

// Calls fn(fields, where) for every non-blank, non-comment line.
template <typename Fn>
void ForEachRecord(const fs::path& path, char sep, Fn&& fn) {
  std::ifstream in = OpenIn(path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(number);
    fn(Split(line, sep), where);
  }
}

BinaryMask ParseMaskField(std::string_view s, const std::string& where) {
  try {
    return BinaryMask::Parse(s);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

void WriteFmap(const fs::path& path, const DenseMap& map) {
  std::ofstream out = OpenOut(path);
  out << "FMAP " << map.size().width << ' ' << map.size().height << '\n';
  std::vector<float> raw;
  raw.reserve(map.values().size());
  for (double v : map.values()) raw.push_back(ToLittle(static_cast<float>(v)));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (!out) throw ValidationError("write failed: " + path.string());
}

DenseMap ReadFmap(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  const FrameSize size = ReadRasterHeader(in, "FMAP", path);
  const std::vector<float> raw = ReadPayload<float>(in, size.pixels(), path);
  try {
    return DenseMap(size, std::vector<double>(raw.begin(), raw.end()));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void WriteImap(const fs::path& path, const LabelMap& map) {
  std::ofstream out = OpenOut(path);
  out << "IMAP " << map.size().width << ' ' << map.size().height << '\n';
  std::vector<std::int32_t> raw;
  raw.reserve(map.values().size());
  for (std::int32_t v : map.values()) raw.push_back(ToLittle(v));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::int32_t)));
  if (!out) throw ValidationError("write failed: " + path.string());
}

LabelMap ReadImap(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  const FrameSize size = ReadRasterHeader(in, "IMAP", path);
  return LabelMap(size, ReadPayload<std::int32_t>(in, size.pixels(), path));
}

void WritePpm(const fs::path& path, const RgbImage& image) {
  std::ofstream out = OpenOut(path);
  out << "P6\n" << image.size().width << ' ' << image.size().height
      << "\n255\n";
  std::vector<unsigned char> raw;
  raw.reserve(image.pixels().size() * 3);
  for (const Rgb& p : image.pixels()) {
    for (double c : p) {
      const double clamped = std::min(1.0, std::max(0.0, c));
      raw.push_back(static_cast<unsigned char>(clamped * 255.0 + 0.5));
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw ValidationError("write failed: " + path.string());
}

RgbImage ReadPpm(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic;
  auto skip_comments = [&in] {
    while (in >> std::ws && in.peek() == '#') {
      std::string ignored;
      std::getline(in, ignored);
    }
  };
  skip_comments();
  in >> w;
  skip_comments();
  in >> h;
  skip_comments();
  in >> maxval;
  if (!in || magic != "P6" || w < 1 || h < 1 || maxval != 255) {
    throw ValidationError(path.string() + ": expected 8-bit binary PPM (P6)");
  }
  in.get();
  RgbImage image(FrameSize(w, h));
  std::vector<unsigned char> raw(image.pixels().size() * 3);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw ValidationError(path.string() + ": truncated PPM");
  }
  auto pixels = image.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    for (int c = 0; c < 3; ++c) pixels[i][c] = raw[i * 3 + c] / 255.0;
  }
  return image;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteProposals(const fs::path& path,
                    const std::vector<RegionProposal>& proposals,
                    bool scored) {
  std::ostringstream out;
  for (const RegionProposal& p : proposals) {
    out << p.frame_index << '\t' << p.mask.ToString() << '\t'
        << FormatDouble(p.appearance_score) << '\t'
        << FormatDouble(p.classifier_confidence) << '\t'
        << FormatFeature(p.feature);
    if (scored) {
      out << '\t' << FormatDouble(p.motion_score) << '\t'
          << FormatDouble(p.combined_score) << '\t'
          << FormatDouble(p.rescored);
    }
    out << '\n';
  }
  WriteText(path, out.str());
}

std::vector<RegionProposal> ReadProposals(const fs::path& path) {
  std::vector<RegionProposal> proposals;
  ForEachRecord(path, '\t', [&](const auto& f, const std::string& where) {
    if (f.size() != 5 && f.size() != 8) {
      throw ValidationError(where + ": expected 5 or 8 tab-separated fields");
    }
    const long long frame = ParseInt(f[0], where);
    if (frame < 0) throw ValidationError(where + ": negative frame index");
    RegionProposal p = [&] {
      try {
        return MakeProposal(static_cast<int>(frame), ParseMaskField(f[1], where),
                            ParseDouble(f[2], where), ParseDouble(f[3], where),
                            ParseFeature(f[4], where));
      } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw ValidationError(where + ": " + msg);
      }
    }();
    if (f.size() == 8) {
      p.motion_score = ParseDouble(f[5], where);
      p.combined_score = ParseDouble(f[6], where);
      p.rescored = ParseDouble(f[7], where);
    }
    if (!proposals.empty() &&
        p.feature.size() != proposals.front().feature.size()) {
      throw ValidationError(where + ": feature dimension differs from earlier records");
    }
    proposals.push_back(std::move(p));
  });
  return proposals;
}

void WriteRegenerated(const fs::path& path,
                      const std::vector<RegeneratedProposal>& proposals) {
  std::ostringstream out;
  for (const RegeneratedProposal& p : proposals) {
    out << p.frame_index << '\t' << p.mask.ToString() << '\t'
        << FormatDouble(p.confidence) << '\t' << FormatDouble(p.source_level)
        << '\t' << FormatFeature(p.feature) << '\n';
  }
  WriteText(path, out.str());
}

std::vector<RegeneratedProposal> ReadRegenerated(const fs::path& path) {
  std::vector<RegeneratedProposal> proposals;
  ForEachRecord(path, '\t', [&](const auto& f, const std::string& where) {
    if (f.size() != 5) {
      throw ValidationError(where + ": expected 5 tab-separated fields");
    }
    const long long frame = ParseInt(f[0], where);
    if (frame < 0) throw ValidationError(where + ": negative frame index");
    BinaryMask mask = ParseMaskField(f[1], where);
    const std::optional<BoundingBox> box = mask.TightBox();
    if (!box) throw ValidationError(where + ": empty proposal");
    proposals.push_back(RegeneratedProposal{
        proposals.size(), static_cast<int>(frame), std::move(mask), *box,
        ParseDouble(f[2], where), ParseDouble(f[3], where),
        ParseFeature(f[4], where)});
  });
  return proposals;
}

void WriteTracks(const fs::path& path, const MiningResult& result) {
  std::ostringstream out;
  for (const Track& t : result.tracks) {
    out << "track " << t.id << ' ' << FormatDouble(t.phi) << '\n';
    out << "feature " << FormatFeature(t.feature) << '\n';
    for (const TrackEntry& e : t.entries) {
      std::vector<std::size_t> ids;
      for (const RegeneratedProposal& p : e.absorbed) ids.push_back(p.id);
      out << "entry " << e.frame_index << ' ' << e.box.x0() << ' '
          << e.box.y0() << ' ' << e.box.x1() << ' ' << e.box.y1() << ' '
          << FormatIds(ids) << '\n';
    }
    out << "end\n";
  }
  out << "discarded " << FormatIds(result.discarded) << '\n';
  WriteText(path, out.str());
}

MiningResult ReadTracks(const fs::path& path,
                        const std::vector<RegeneratedProposal>& regenerated) {
  MiningResult result;
  Track* open = nullptr;
  bool saw_discarded = false;
  ForEachRecord(path, ' ', [&](const auto& f, const std::string& where) {
    const std::string_view kind = f[0];
    if (kind == "track" && f.size() == 3 && !open) {
      result.tracks.emplace_back();
      open = &result.tracks.back();
      open->id = static_cast<std::size_t>(ParseInt(f[1], where));
      open->phi = ParseDouble(f[2], where);
    } else if (kind == "feature" && open && f.size() <= 2) {
      open->feature = ParseFeature(f.size() == 2 ? f[1] : "", where);
    } else if (kind == "entry" && open && f.size() == 7) {
      const int frame = static_cast<int>(ParseInt(f[1], where));
      TrackEntry entry{frame,
                       BoundingBox(static_cast<int>(ParseInt(f[2], where)),
                                   static_cast<int>(ParseInt(f[3], where)),
                                   static_cast<int>(ParseInt(f[4], where)),
                                   static_cast<int>(ParseInt(f[5], where))),
                       {}};
      for (std::size_t id : ParseIds(f[6], where)) {
        if (id >= regenerated.size() || regenerated[id].frame_index != frame) {
          throw ValidationError(where + ": unknown proposal id " +
                                std::to_string(id));
        }
        entry.absorbed.push_back(regenerated[id]);
      }
      open->entries.push_back(std::move(entry));
    } else if (kind == "end" && open && f.size() == 1) {
      if (open->entries.empty()) {
        throw ValidationError(where + ": track without entries");
      }
      open = nullptr;
    } else if (kind == "discarded" && !open && !saw_discarded &&
               f.size() == 2) {
      result.discarded = ParseIds(f[1], where);
      saw_discarded = true;
    } else {
      throw ValidationError(where + ": unexpected '" + std::string(kind) +
                            "' record");
    }
  });
  if (open || !saw_discarded) {
    throw ValidationError(path.string() + ": incomplete track file");
  }
  return result;
}

void WriteSelection(const fs::path& path, const SelectionResult& result) {
  std::ostringstream out;
  out << "selected " << FormatIds(result.selected) << '\n';
  out << "objective " << FormatDouble(result.objective_value) << '\n';
  out << "gains";
  for (double g : result.gain_trace) out << ' ' << FormatDouble(g);
  out << '\n';
  WriteText(path, out.str());
}

SelectionResult ReadSelection(const fs::path& path) {
  SelectionResult result;
  int seen = 0;
  ForEachRecord(path, ' ', [&](const auto& f, const std::string& where) {
    if (f[0] == "selected" && f.size() == 2) {
      result.selected = ParseIds(f[1], where);
    } else if (f[0] == "objective" && f.size() == 2) {
      result.objective_value = ParseDouble(f[1], where);
    } else if (f[0] == "gains") {
      for (std::size_t i = 1; i < f.size(); ++i) {
        result.gain_trace.push_back(ParseDouble(f[i], where));
      }
    } else {
      throw ValidationError(where + ": unexpected selection record");
    }
    ++seen;
  });
  if (seen != 3) throw ValidationError(path.string() + ": incomplete selection");
  return result;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in = OpenIn(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out = OpenOut(path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path.string());
}

}  // namespace trackcut::io
