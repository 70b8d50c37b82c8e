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

#ifndef ATTRINF_PIPELINE_REPORT_H_
#define ATTRINF_PIPELINE_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "attrinf/metrics/metrics.h"

namespace attrinf::pipeline {

// One attack cell, measured on the eval split.
struct AttackRow {
  std::string dataset;
  std::string sensitive;
  std::string threat_model;
  std::string explainer;  // "none" for the prediction-only surface
  std::string surface;
  std::string attack_kind;
  double tau_star = 0.0;
  double aux_f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double base_rate = 0.0;        // eval split
  double all_positive_f1 = 0.0;  // from base_rate
  double target_test_accuracy = 0.0;
  metrics::ConfusionCounts counts;

  // File stem shared by the curve and prediction files of this cell.
  std::string cell_id() const;
};

// Pearson coefficients of s against one quantity. Multi-column quantities
// report mean and population stdev over per-column coefficients; columns
// that are constant on the split are skipped and named.
struct CorrelationRow {
  std::string dataset;
  std::string sensitive;
  std::string threat_model;
  std::string explainer;  // "none" for y and x
  std::string quantity;   // y, x, phi_s, phi_x
  double mean = 0.0;
  double stdev = 0.0;
  double mean_abs = 0.0;
  std::size_t columns = 0;
  std::vector<std::string> skipped;
};

struct PredictionDump {
  std::vector<std::uint64_t> record_ids;
  std::vector<double> scores;
  std::vector<int> predicted;
  std::vector<int> truth;
};

struct AttackReport {
  std::vector<AttackRow> rows;
  std::vector<CorrelationRow> correlations;
  std::map<std::string, metrics::PrCurve> curves;        // by cell id, eval split
  std::map<std::string, PredictionDump> predictions;     // by cell id, eval split
  std::vector<std::pair<std::string, std::string>> manifest;  // settings and data facts

  const AttackRow* find(std::string_view threat_model, std::string_view explainer,
                        std::string_view surface) const;
};

// Writes into `dir` (created if needed):
//   report.csv        one line per AttackRow
//   correlation.csv   one line per CorrelationRow
//   summary.json      rows, correlations and manifest
//   manifest.json     settings and data facts
//   curves/<cell>.csv, predictions/<cell>.csv
// Output depends only on the report, so re-emitting is byte-identical.
// Throws IoError.
void emit_report(const AttackReport& report, const std::filesystem::path& dir);

}  // namespace attrinf::pipeline

#endif  // ATTRINF_PIPELINE_REPORT_H_
