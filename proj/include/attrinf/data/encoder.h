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

#ifndef ATTRINF_DATA_ENCODER_H_
#define ATTRINF_DATA_ENCODER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/data/schema.h"
#include "attrinf/data/table.h"

namespace attrinf::data {

struct ColumnGroup {
  std::string name;
  std::vector<int> columns;
};

// Encoded features with the label y and the binary sensitive attribute s.
//
// Numeric columns are z-scored with training statistics; categorical columns
// become indicator blocks (sorted training vocabulary plus a trailing
// "<unknown>" slot). When includes_sensitive is set, s itself is appended as
// a single 0/1 column whose group carries the sensitive column's name.
struct TabularDataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  std::vector<int> sensitive;
  std::vector<ColumnGroup> column_groups;
  std::vector<std::string> feature_names;
  bool includes_sensitive = false;
  std::string sensitive_name;
  std::vector<std::uint64_t> record_ids;
  std::size_t unknown_categories = 0;

  std::size_t rows() const { return labels.size(); }
  int dim() const { return static_cast<int>(features.cols()); }
  const ColumnGroup* group(std::string_view name) const;
  std::vector<int> sensitive_columns() const;
  std::vector<int> nonsensitive_columns() const;
  TabularDataset subset(std::span<const std::size_t> rows) const;
};

class Encoder {
 public:
  // Vocabularies and moments come from `train` only.
  static Encoder fit(const RawTable& train, const TabularSchema& schema);

  // Unseen categories land in the column's unknown slot and are counted.
  TabularDataset transform(const RawTable& table, bool include_sensitive) const;

  const TabularSchema& schema() const { return schema_; }
  const std::vector<std::string>& vocabulary(std::size_t column) const { return vocab_.at(column); }
  double mean(std::size_t column) const { return mean_.at(column); }
  double stdev(std::size_t column) const { return stdev_.at(column); }

 private:
  TabularSchema schema_;
  std::vector<std::vector<std::string>> vocab_;
  std::vector<double> mean_;
  std::vector<double> stdev_;
};

// Fits on `table` itself unless `stats_from` supplies training statistics.
TabularDataset encode(const RawTable& table, const TabularSchema& schema, bool include_sensitive,
                      const Encoder* stats_from = nullptr);

}  // namespace attrinf::data

#endif  // ATTRINF_DATA_ENCODER_H_
