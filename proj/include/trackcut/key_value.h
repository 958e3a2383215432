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

#ifndef TRACKCUT_KEY_VALUE_H_
#define TRACKCUT_KEY_VALUE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace trackcut {

// Flat "key = value" text. '#' starts a comment, blank lines are ignored,
// keys may appear only once.
class KeyValues {
 public:
  static KeyValues Parse(std::string_view text, const std::string& origin);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& Get(const std::string& key) const;
  std::string GetOr(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key) const;
  long long GetInt(const std::string& key) const;
  bool GetBool(const std::string& key) const;

  void Set(const std::string& key, std::string value);
  // Throws if any key outside `known` is present.
  void RejectUnknown(const std::vector<std::string>& known) const;
  // Keys starting with `prefix`.
  std::vector<std::string> KeysWithPrefix(const std::string& prefix) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

}  // namespace trackcut

#endif  // TRACKCUT_KEY_VALUE_H_
