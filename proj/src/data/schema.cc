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

#include "attrinf/data/schema.h"

#include <algorithm>
#include <set>

#include "attrinf/common/error.h"

namespace attrinf::data {

void TabularSchema::validate() const {
  if (label_column.empty()) throw SchemaError("schema: label column is required");
  if (sensitive_column.empty()) throw SchemaError("schema: sensitive column is required");
  if (label_column == sensitive_column) throw SchemaError("schema: label and sensitive column coincide");
  if (label_positive_values.empty()) throw SchemaError("schema: label_positive must list at least one value");
  if (sensitive_positive_value.empty() && binarization_map.empty()) {
    throw SchemaError("schema: either sensitive_positive or sensitive_map is required");
  }
  for (const auto& [value, s] : binarization_map) {
    if (s != 0 && s != 1) throw SchemaError("schema: sensitive_map values must be 0 or 1");
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw SchemaError("schema: empty column name");
    if (!seen.insert(c.name).second) throw SchemaError("schema: duplicate column '" + c.name + "'");
    if (c.name == label_column) throw SchemaError("schema: label column may not be a feature");
    if (c.name == sensitive_column) {
      throw SchemaError("schema: sensitive column '" + c.name + "' may not be listed as a feature");
    }
  }
  if (columns.empty()) throw SchemaError("schema: no feature columns");
}

int TabularSchema::label_of(std::string_view raw) const {
  return std::find(label_positive_values.begin(), label_positive_values.end(), raw) != label_positive_values.end()
             ? 1
             : 0;
}

int TabularSchema::sensitive_of(std::string_view raw) const {
  if (!binarization_map.empty()) {
    const auto it = binarization_map.find(raw);
    if (it == binarization_map.end()) {
      throw SchemaError("sensitive value '" + std::string(raw) + "' is not in sensitive_map");
    }
    return it->second;
  }
  return raw == sensitive_positive_value ? 1 : 0;
}

bool TabularSchema::is_missing(std::string_view raw) const {
  return raw.empty() || std::find(missing_values.begin(), missing_values.end(), raw) != missing_values.end();
}

TabularSchema TabularSchema::from_kv(const KeyValueFile& kv) {
  TabularSchema schema;
  schema.name = kv.get_or("name", "dataset");
  for (const auto& item : kv.get_list("columns")) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw SchemaError("schema: column '" + item + "' lacks ':kind'");
    ColumnSpec spec;
    spec.name = trim(std::string_view(item).substr(0, colon));
    const std::string kind = trim(std::string_view(item).substr(colon + 1));
    if (kind == "numeric") {
      spec.kind = ColumnKind::kNumeric;
    } else if (kind == "categorical") {
      spec.kind = ColumnKind::kCategorical;
    } else {
      throw SchemaError("schema: unknown column kind '" + kind + "'");
    }
    schema.columns.push_back(std::move(spec));
  }
  schema.label_column = kv.get_or("label", "");
  schema.label_positive_values = kv.get_list("label_positive");
  schema.sensitive_column = kv.get_or("sensitive", "");
  schema.sensitive_positive_value = kv.get_or("sensitive_positive", "");
  for (const auto& item : kv.get_list("sensitive_map")) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw SchemaError("schema: sensitive_map entry '" + item + "' lacks ':0|1'");
    const std::string value = trim(std::string_view(item).substr(0, colon));
    const std::string bit = trim(std::string_view(item).substr(colon + 1));
    if (bit != "0" && bit != "1") throw SchemaError("schema: sensitive_map entry '" + item + "' must map to 0 or 1");
    schema.binarization_map[value] = bit == "1" ? 1 : 0;
  }
  if (kv.has("missing")) schema.missing_values = kv.get_list("missing");
  schema.validate();
  return schema;
}

TabularSchema TabularSchema::load(const std::filesystem::path& path) {
  return from_kv(KeyValueFile::load(path));
}

}  // namespace attrinf::data
