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

#include "attrinf/data/table.h"

#include <charconv>
#include <cmath>
#include <fstream>

#include "attrinf/common/error.h"
#include "attrinf/data/csv.h"

namespace attrinf::data {

RawTable RawTable::subset(std::span<const std::size_t> rows) const {
  RawTable out;
  out.columns.reserve(columns.size());
  for (const auto& c : columns) {
    RawColumn rc{c.name, c.kind, {}, {}};
    for (std::size_t r : rows) {
      if (c.kind == ColumnKind::kNumeric) {
        rc.numbers.push_back(c.numbers.at(r));
      } else {
        rc.categories.push_back(c.categories.at(r));
      }
    }
    out.columns.push_back(std::move(rc));
  }
  for (std::size_t r : rows) {
    out.labels.push_back(labels.at(r));
    out.sensitive_raw.push_back(sensitive_raw.at(r));
    out.sensitive.push_back(sensitive.at(r));
    out.source_rows.push_back(source_rows.at(r));
  }
  return out;
}

namespace {

std::size_t column_index(const CsvTable& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    if (csv.header[i] == name) return i;
  }
  throw SchemaError("CSV has no column '" + name + "'");
}

}  // namespace

RawTable load_csv(std::istream& in, const TabularSchema& schema) {
  schema.validate();
  const CsvTable csv = read_csv(in);
  if (csv.rows.empty()) throw IoError("CSV has a header but no data rows");

  std::vector<std::size_t> feature_idx;
  for (const auto& c : schema.columns) feature_idx.push_back(column_index(csv, c.name));
  const std::size_t label_idx = column_index(csv, schema.label_column);
  const std::size_t sensitive_idx = column_index(csv, schema.sensitive_column);

  RawTable table;
  for (const auto& c : schema.columns) table.columns.push_back({c.name, c.kind, {}, {}});
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    bool missing = schema.is_missing(row[label_idx]) || schema.is_missing(row[sensitive_idx]);
    for (std::size_t k = 0; k < feature_idx.size() && !missing; ++k) missing = schema.is_missing(row[feature_idx[k]]);
    if (missing) {
      ++table.dropped_missing;
      continue;
    }
    for (std::size_t k = 0; k < feature_idx.size(); ++k) {
      const std::string& cell = row[feature_idx[k]];
      auto& col = table.columns[k];
      if (col.kind == ColumnKind::kNumeric) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
          throw SchemaError("data row " + std::to_string(r + 1) + ": column '" + col.name +
                            "' is not numeric: '" + cell + "'");
        }
        col.numbers.push_back(v);
      } else {
        col.categories.push_back(cell);
      }
    }
    table.labels.push_back(schema.label_of(row[label_idx]));
    table.sensitive_raw.push_back(row[sensitive_idx]);
    table.sensitive.push_back(schema.sensitive_of(row[sensitive_idx]));
    table.source_rows.push_back(r);
  }
  return table;
}

RawTable load_csv(const std::filesystem::path& path, const TabularSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_csv(in, schema);
}

}  // namespace attrinf::data
