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

#ifndef ATTRINF_DATA_TABLE_H_
#define ATTRINF_DATA_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "attrinf/data/schema.h"

namespace attrinf::data {

struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<double> numbers;           // numeric columns
  std::vector<std::string> categories;   // categorical columns
};

// Typed rows of the schema columns, before encoding.
struct RawTable {
  std::vector<RawColumn> columns;  // schema.columns order
  std::vector<int> labels;
  std::vector<std::string> sensitive_raw;
  std::vector<int> sensitive;
  std::vector<std::size_t> source_rows;  // 0-based data row in the CSV
  std::size_t dropped_missing = 0;

  std::size_t rows() const { return labels.size(); }
  RawTable subset(std::span<const std::size_t> rows) const;
};

// Rows with a missing value in any schema column are dropped and counted.
// Throws SchemaError for a missing column or an unparseable number and
// IoError for an unreadable or empty file.
RawTable load_csv(std::istream& in, const TabularSchema& schema);
RawTable load_csv(const std::filesystem::path& path, const TabularSchema& schema);

}  // namespace attrinf::data

#endif  // ATTRINF_DATA_TABLE_H_
