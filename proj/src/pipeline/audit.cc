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

#include "attrinf/pipeline/audit.h"

#include <algorithm>
#include <cmath>

#include "attrinf/common/error.h"
#include "attrinf/metrics/metrics.h"

namespace attrinf::pipeline {
namespace {

bool constant(std::span<const double> v) {
  return v.empty() || std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// Correlates s with each column in `columns`; names[i] labels columns[i].
CorrelationRow correlate(const std::vector<double>& s, const std::vector<std::vector<double>>& columns,
                         const std::vector<std::string>& names, CorrelationRow row) {
  std::vector<double> r;
  std::vector<double> abs_r;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (constant(s) || constant(columns[c])) {
      row.skipped.push_back(names[c]);
      continue;
    }
    r.push_back(metrics::pearson(s, columns[c]));
    abs_r.push_back(std::abs(r.back()));
  }
  if (!r.empty()) {
    const auto ms = metrics::mean_std(r);
    row.mean = ms.mean;
    row.stdev = ms.stdev;
    row.mean_abs = metrics::mean_std(abs_r).mean;
  }
  row.columns = r.size();
  return row;
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

CorrelationRow base_row(const data::TabularDataset& ds, const AuditContext& ctx, std::string explainer,
                        std::string quantity) {
  CorrelationRow row;
  row.dataset = ctx.dataset;
  row.sensitive = ds.sensitive_name;
  row.threat_model = ctx.threat_model;
  row.explainer = std::move(explainer);
  row.quantity = std::move(quantity);
  return row;
}

}  // namespace

std::vector<CorrelationRow> audit_data(const data::TabularDataset& ds, const AuditContext& ctx) {
  const auto s = as_doubles(ds.sensitive);
  std::vector<CorrelationRow> rows;
  rows.push_back(correlate(s, {as_doubles(ds.labels)}, {"y"}, base_row(ds, ctx, "none", "y")));

  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  for (int c : ds.nonsensitive_columns()) {
    const auto col = ds.features.col(c);
    cols.emplace_back(col.data(), col.data() + col.size());
    names.push_back(ds.feature_names[static_cast<std::size_t>(c)]);
  }
  rows.push_back(correlate(s, cols, names, base_row(ds, ctx, "none", "x")));
  return rows;
}

std::vector<CorrelationRow> audit_attributions(const data::TabularDataset& ds,
                                               std::span<const explain::Attribution> attributions,
                                               const std::string& explainer, const AuditContext& ctx) {
  if (attributions.size() != ds.rows()) throw DimensionMismatch("one attribution per row is required");
  for (const auto& a : attributions) {
    if (a.scores.size() != ds.dim()) throw DimensionMismatch("attribution width differs from the dataset");
  }
  const auto s = as_doubles(ds.sensitive);
  auto gather = [&](const std::vector<int>& columns, std::vector<std::vector<double>>& cols,
                    std::vector<std::string>& names) {
    for (int c : columns) {
      std::vector<double> v;
      v.reserve(attributions.size());
      for (const auto& a : attributions) v.push_back(a.scores(c));
      cols.push_back(std::move(v));
      names.push_back(ds.feature_names[static_cast<std::size_t>(c)]);
    }
  };
  std::vector<CorrelationRow> rows;
  if (ds.includes_sensitive) {
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    gather(ds.sensitive_columns(), cols, names);
    rows.push_back(correlate(s, cols, names, base_row(ds, ctx, explainer, "phi_s")));
  }
  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  gather(ds.nonsensitive_columns(), cols, names);
  rows.push_back(correlate(s, cols, names, base_row(ds, ctx, explainer, "phi_x")));
  return rows;
}

}  // namespace attrinf::pipeline
