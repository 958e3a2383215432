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

#ifndef TRACKCUT_IO_H_
#define TRACKCUT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trackcut/dense_map.h"
#include "trackcut/mining.h"
#include "trackcut/proposal.h"
#include "trackcut/selection.h"

namespace trackcut::io {

namespace fs = std::filesystem;

// "FMAP w h\n" followed by w*h little-endian float32, row-major.
void WriteFmap(const fs::path& path, const DenseMap& map);
DenseMap ReadFmap(const fs::path& path);

// "IMAP w h\n" followed by w*h little-endian int32, row-major.
void WriteImap(const fs::path& path, const LabelMap& map);
LabelMap ReadImap(const fs::path& path);

// Binary PPM (P6, maxval 255).
void WritePpm(const fs::path& path, const RgbImage& image);
RgbImage ReadPpm(const fs::path& path);

// Shortest decimal that round-trips the double.
std::string FormatDouble(double v);

// One proposal per line, tab separated:
//   frame  rle  appearance  classifier_confidence  f1,f2,...
// Scored files append: motion  combined  rescored.
// Blank lines and lines starting with '#' are ignored.
void WriteProposals(const fs::path& path,
                    const std::vector<RegionProposal>& proposals, bool scored);
std::vector<RegionProposal> ReadProposals(const fs::path& path);

// frame  rle  confidence  source_level  f1,f2,...   (id = line order)
void WriteRegenerated(const fs::path& path,
                      const std::vector<RegeneratedProposal>& proposals);
std::vector<RegeneratedProposal> ReadRegenerated(const fs::path& path);

// Tracks reference regenerated proposals by id:
//   track <id> <phi>
//   feature f1,f2,...
//   entry <frame> <x0> <y0> <x1> <y1> <id,id,...|->
//   end
//   discarded <id,id,...|->
void WriteTracks(const fs::path& path, const MiningResult& result);
MiningResult ReadTracks(const fs::path& path,
                        const std::vector<RegeneratedProposal>& regenerated);

void WriteSelection(const fs::path& path, const SelectionResult& result);
SelectionResult ReadSelection(const fs::path& path);

std::string ReadText(const fs::path& path);
void WriteText(const fs::path& path, const std::string& text);

}  // namespace trackcut::io

#endif  // TRACKCUT_IO_H_
