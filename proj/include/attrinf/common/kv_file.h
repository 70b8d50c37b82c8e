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

#ifndef ATTRINF_COMMON_KV_FILE_H_
#define ATTRINF_COMMON_KV_FILE_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace attrinf {

// Flat `key = value` document. Blank lines and lines starting with '#' are
// ignored; keys are unique. Used for dataset schemas and experiment configs.
class KeyValueFile {
 public:
  KeyValueFile() = default;

  static KeyValueFile parse(std::istream& in, std::string_view origin = "<input>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  void set(std::string key, std::string value);

  // Throws SchemaError if the key is missing.
  const std::string& get(std::string_view key) const;
  std::optional<std::string> find(std::string_view key) const;

  std::string get_or(std::string_view key, std::string fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  // Comma-separated list with surrounding whitespace trimmed from each item.
  // Empty when the key is absent.
  std::vector<std::string> get_list(std::string_view key) const;
  std::vector<int> get_int_list(std::string_view key, std::vector<int> fallback) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }
  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::string origin_;
};

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

}  // namespace attrinf

#endif  // ATTRINF_COMMON_KV_FILE_H_
