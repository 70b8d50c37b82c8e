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

#include "attrinf/data/encoder.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "attrinf/common/error.h"

namespace attrinf::data {

namespace {

constexpr const char* kUnknown = "<unknown>";

}  // namespace

const ColumnGroup* TabularDataset::group(std::string_view name) const {
  for (const auto& g : column_groups) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

std::vector<int> TabularDataset::sensitive_columns() const {
  if (!includes_sensitive) return {};
  const ColumnGroup* g = group(sensitive_name);
  return g ? g->columns : std::vector<int>{};
}

std::vector<int> TabularDataset::nonsensitive_columns() const {
  std::vector<int> out;
  for (const auto& g : column_groups) {
    if (includes_sensitive && g.name == sensitive_name) continue;
    out.insert(out.end(), g.columns.begin(), g.columns.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TabularDataset TabularDataset::subset(std::span<const std::size_t> rows) const {
  TabularDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= this->rows()) throw InvalidArgument("subset row out of range");
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
    out.sensitive.push_back(sensitive[rows[i]]);
    out.record_ids.push_back(record_ids[rows[i]]);
  }
  out.column_groups = column_groups;
  out.feature_names = feature_names;
  out.includes_sensitive = includes_sensitive;
  out.sensitive_name = sensitive_name;
  return out;
}

Encoder Encoder::fit(const RawTable& train, const TabularSchema& schema) {
  schema.validate();
  if (train.columns.size() != schema.columns.size()) throw SchemaError("table does not match the schema");
  if (train.rows() == 0) throw InvalidArgument("cannot fit an encoder on an empty table");
  Encoder enc;
  enc.schema_ = schema;
  const double n = static_cast<double>(train.rows());
  for (const auto& col : train.columns) {
    if (col.kind == ColumnKind::kNumeric) {
      double mean = 0.0;
      for (double v : col.numbers) mean += v;
      mean /= n;
      double ss = 0.0;
      for (double v : col.numbers) ss += (v - mean) * (v - mean);
      double stdev = std::sqrt(ss / n);
      if (!(stdev > 0.0)) stdev = 1.0;
      enc.mean_.push_back(mean);
      enc.stdev_.push_back(stdev);
      enc.vocab_.emplace_back();
    } else {
      std::set<std::string> values(col.categories.begin(), col.categories.end());
      enc.vocab_.emplace_back(values.begin(), values.end());
      enc.mean_.push_back(0.0);
      enc.stdev_.push_back(1.0);
    }
  }
  return enc;
}

TabularDataset Encoder::transform(const RawTable& table, bool include_sensitive) const {
  if (table.columns.size() != schema_.columns.size()) throw SchemaError("table does not match the schema");
  TabularDataset ds;
  int width = 0;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    const auto& col = table.columns[k];
    if (col.name != schema_.columns[k].name || col.kind != schema_.columns[k].kind) {
      throw SchemaError("table column '" + col.name + "' does not match the schema");
    }
    ColumnGroup g{col.name, {}};
    if (col.kind == ColumnKind::kNumeric) {
      g.columns.push_back(width++);
      ds.feature_names.push_back(col.name);
    } else {
      for (const auto& v : vocab_[k]) {
        g.columns.push_back(width++);
        ds.feature_names.push_back(col.name + "=" + v);
      }
      g.columns.push_back(width++);
      ds.feature_names.push_back(col.name + "=" + kUnknown);
    }
    ds.column_groups.push_back(std::move(g));
  }
  ds.sensitive_name = schema_.sensitive_column;
  ds.includes_sensitive = include_sensitive;
  if (include_sensitive) {
    ds.column_groups.push_back({schema_.sensitive_column, {width++}});
    ds.feature_names.push_back(schema_.sensitive_column);
  }

  const auto n = static_cast<Eigen::Index>(table.rows());
  ds.features = Eigen::MatrixXd::Zero(n, width);
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    const auto& col = table.columns[k];
    const auto& cols = ds.column_groups[k].columns;
    if (col.kind == ColumnKind::kNumeric) {
      for (Eigen::Index r = 0; r < n; ++r) {
        ds.features(r, cols[0]) = (col.numbers[static_cast<std::size_t>(r)] - mean_[k]) / stdev_[k];
      }
    } else {
      const auto& vocab = vocab_[k];
      for (Eigen::Index r = 0; r < n; ++r) {
        const auto& v = col.categories[static_cast<std::size_t>(r)];
        const auto it = std::lower_bound(vocab.begin(), vocab.end(), v);
        if (it != vocab.end() && *it == v) {
          ds.features(r, cols[static_cast<std::size_t>(it - vocab.begin())]) = 1.0;
        } else {
          ds.features(r, cols.back()) = 1.0;
          ++ds.unknown_categories;
        }
      }
    }
  }
  if (include_sensitive) {
    const int c = ds.column_groups.back().columns[0];
    for (Eigen::Index r = 0; r < n; ++r) ds.features(r, c) = table.sensitive[static_cast<std::size_t>(r)];
  }
  ds.labels = table.labels;
  ds.sensitive = table.sensitive;
  ds.record_ids.assign(table.source_rows.begin(), table.source_rows.end());
  return ds;
}

TabularDataset encode(const RawTable& table, const TabularSchema& schema, bool include_sensitive,
                      const Encoder* stats_from) {
  if (stats_from) return stats_from->transform(table, include_sensitive);
  return Encoder::fit(table, schema).transform(table, include_sensitive);
}

}  // namespace attrinf::data
