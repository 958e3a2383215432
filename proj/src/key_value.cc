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

#include "trackcut/key_value.h"

#include <algorithm>
#include <charconv>

#include "trackcut/errors.h"

namespace trackcut {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues KeyValues::Parse(std::string_view text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  int number = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(number);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(where + ": expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (key.empty()) throw ValidationError(where + ": empty key");
    if (!kv.values_.emplace(key, value).second) {
      throw ValidationError(where + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

const std::string& KeyValues::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ValidationError(origin_ + ": missing key '" + key + "'");
  }
  return it->second;
}

std::string KeyValues::GetOr(const std::string& key,
                             const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValues::GetDouble(const std::string& key) const {
  const std::string& s = Get(key);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(origin_ + ": '" + key + "' is not a number");
  }
  return v;
}

long long KeyValues::GetInt(const std::string& key) const {
  const std::string& s = Get(key);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(origin_ + ": '" + key + "' is not an integer");
  }
  return v;
}

bool KeyValues::GetBool(const std::string& key) const {
  const std::string& s = Get(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ValidationError(origin_ + ": '" + key + "' is not a boolean");
}

void KeyValues::Set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

void KeyValues::RejectUnknown(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError(origin_ + ": unknown key '" + key + "'");
    }
  }
}

std::vector<std::string> KeyValues::KeysWithPrefix(
    const std::string& prefix) const {
  std::vector<std::string> keys;
  for (const auto& [key, value] : values_) {
    if (key.rfind(prefix, 0) == 0) keys.push_back(key);
  }
  return keys;
}

}  // namespace trackcut
