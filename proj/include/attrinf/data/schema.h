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

#ifndef ATTRINF_DATA_SCHEMA_H_
#define ATTRINF_DATA_SCHEMA_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "attrinf/common/kv_file.h"

namespace attrinf::data {

enum class ColumnKind { kNumeric, kCategorical };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
};

// Describes how a CSV maps onto (x, s, y).
//
// Schema file keys:
//   name               dataset name used in reports
//   columns            name:numeric|categorical, ... (feature columns, in order)
//   label              label column
//   label_positive     raw label values mapped to y = 1
//   sensitive          sensitive column (never listed in `columns`)
//   sensitive_positive raw value mapped to s = 1, every other value to 0
//   sensitive_map      value:0|1, ... explicit binarization; overrides
//                      sensitive_positive and rejects unlisted values
//   missing            tokens treated as missing (default "?"); empty cells
//                      are always missing
struct TabularSchema {
  std::string name = "dataset";
  std::vector<ColumnSpec> columns;
  std::string label_column;
  std::vector<std::string> label_positive_values;
  std::string sensitive_column;
  std::string sensitive_positive_value;
  std::map<std::string, int, std::less<>> binarization_map;
  std::vector<std::string> missing_values = {"?"};

  // Throws SchemaError.
  void validate() const;

  int label_of(std::string_view raw) const;
  int sensitive_of(std::string_view raw) const;
  bool is_missing(std::string_view raw) const;

  static TabularSchema from_kv(const KeyValueFile& kv);
  static TabularSchema load(const std::filesystem::path& path);
};

}  // namespace attrinf::data

#endif  // ATTRINF_DATA_SCHEMA_H_
