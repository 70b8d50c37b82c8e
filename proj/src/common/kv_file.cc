// Copyright 2026 The attrinf Authors.
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

#include "attrinf/common/kv_file.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "attrinf/common/error.h"

namespace attrinf {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

KeyValueFile KeyValueFile::parse(std::istream& in, std::string_view origin) {
  KeyValueFile kv;
  kv.origin_ = std::string(origin);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw SchemaError(kv.origin_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) {
      throw SchemaError(kv.origin_ + ":" + std::to_string(line_no) + ": empty key");
    }
    if (kv.entries_.count(key)) {
      throw SchemaError(kv.origin_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    kv.entries_.emplace(std::move(key), std::move(value));
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse(in, path.string());
}

bool KeyValueFile::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void KeyValueFile::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

const std::string& KeyValueFile::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw SchemaError(origin_ + ": missing key '" + std::string(key) + "'");
  return it->second;
}

std::optional<std::string> KeyValueFile::find(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueFile::get_or(std::string_view key, std::string fallback) const {
  auto v = find(key);
  return v ? *v : std::move(fallback);
}

namespace {

template <typename T>
T parse_number(const std::string& origin, std::string_view key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw SchemaError(origin + ": key '" + std::string(key) + "' has invalid number '" + text + "'");
  }
  return value;
}

}  // namespace

std::int64_t KeyValueFile::get_int(std::string_view key, std::int64_t fallback) const {
  auto v = find(key);
  return v ? parse_number<std::int64_t>(origin_, key, *v) : fallback;
}

std::uint64_t KeyValueFile::get_uint(std::string_view key, std::uint64_t fallback) const {
  auto v = find(key);
  return v ? parse_number<std::uint64_t>(origin_, key, *v) : fallback;
}

double KeyValueFile::get_double(std::string_view key, double fallback) const {
  auto v = find(key);
  return v ? parse_number<double>(origin_, key, *v) : fallback;
}

bool KeyValueFile::get_bool(std::string_view key, bool fallback) const {
  auto v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw SchemaError(origin_ + ": key '" + std::string(key) + "' is not a boolean");
}

std::vector<std::string> KeyValueFile::get_list(std::string_view key) const {
  auto v = find(key);
  return v ? split_list(*v) : std::vector<std::string>{};
}

std::vector<int> KeyValueFile::get_int_list(std::string_view key, std::vector<int> fallback) const {
  if (!has(key)) return fallback;
  std::vector<int> out;
  for (const auto& item : get_list(key)) out.push_back(parse_number<int>(origin_, key, item));
  return out;
}

}  // namespace attrinf
