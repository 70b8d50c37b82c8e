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

#include "attrinf/pipeline/report.h"

#include <cctype>
#include <fstream>

#include "attrinf/common/error.h"
#include "attrinf/common/format.h"
#include "json.hpp"

namespace attrinf::pipeline {
namespace {

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::ordered_json row_json(const AttackRow& r) {
  return {{"dataset", r.dataset},
          {"sensitive", r.sensitive},
          {"threat_model", r.threat_model},
          {"explainer", r.explainer},
          {"surface", r.surface},
          {"attack_kind", r.attack_kind},
          {"tau_star", r.tau_star},
          {"aux_f1", r.aux_f1},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"base_rate", r.base_rate},
          {"all_positive_f1", r.all_positive_f1},
          {"target_test_accuracy", r.target_test_accuracy},
          {"tp", r.counts.tp},
          {"fp", r.counts.fp},
          {"tn", r.counts.tn},
          {"fn", r.counts.fn},
          {"curve_file", "curves/" + r.cell_id() + ".csv"},
          {"predictions_file", "predictions/" + r.cell_id() + ".csv"}};
}

nlohmann::ordered_json correlation_json(const CorrelationRow& r) {
  return {{"dataset", r.dataset},   {"sensitive", r.sensitive}, {"threat_model", r.threat_model},
          {"explainer", r.explainer}, {"quantity", r.quantity}, {"mean", r.mean},
          {"stdev", r.stdev},       {"mean_abs", r.mean_abs},   {"columns", r.columns},
          {"skipped", r.skipped}};
}

}  // namespace

std::string AttackRow::cell_id() const {
  return sanitize(dataset + "_" + sensitive + "_" + threat_model + "_" + explainer + "_" + surface);
}

const AttackRow* AttackReport::find(std::string_view threat_model, std::string_view explainer,
                                    std::string_view surface) const {
  for (const auto& r : rows) {
    if (r.threat_model == threat_model && r.explainer == explainer && r.surface == surface) return &r;
  }
  return nullptr;
}

void emit_report(const AttackReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "curves", ec);
  std::filesystem::create_directories(dir / "predictions", ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  {
    const auto path = dir / "report.csv";
    auto out = open_out(path);
    out << "dataset,sensitive,threat_model,explainer,surface,attack_kind,tau_star,aux_f1,precision,recall,f1,"
           "base_rate,all_positive_f1,target_test_accuracy,tp,fp,tn,fn,curve_file,predictions_file\n";
    for (const auto& r : report.rows) {
      out << csv_field(r.dataset) << ',' << csv_field(r.sensitive) << ',' << r.threat_model << ',' << r.explainer
          << ',' << r.surface << ',' << r.attack_kind << ',' << format_double(r.tau_star) << ','
          << format_double(r.aux_f1) << ',' << format_double(r.precision) << ',' << format_double(r.recall) << ','
          << format_double(r.f1) << ',' << format_double(r.base_rate) << ',' << format_double(r.all_positive_f1)
          << ',' << format_double(r.target_test_accuracy) << ',' << r.counts.tp << ',' << r.counts.fp << ','
          << r.counts.tn << ',' << r.counts.fn << ",curves/" << r.cell_id() << ".csv,predictions/" << r.cell_id()
          << ".csv\n";
    }
    finish(out, path);
  }
  {
    const auto path = dir / "correlation.csv";
    auto out = open_out(path);
    out << "dataset,sensitive,threat_model,explainer,quantity,mean,stdev,mean_abs,columns,skipped\n";
    for (const auto& r : report.correlations) {
      out << csv_field(r.dataset) << ',' << csv_field(r.sensitive) << ',' << r.threat_model << ',' << r.explainer
          << ',' << r.quantity << ',' << format_double(r.mean) << ',' << format_double(r.stdev) << ','
          << format_double(r.mean_abs) << ',' << r.columns << ',' << csv_field(join(r.skipped, ";")) << '\n';
    }
    finish(out, path);
  }
  for (const auto& [id, curve] : report.curves) metrics::write_pr_curve(dir / "curves" / (id + ".csv"), curve);
  for (const auto& [id, dump] : report.predictions) {
    const auto path = dir / "predictions" / (id + ".csv");
    auto out = open_out(path);
    out << "record_id,score,predicted,truth\n";
    for (std::size_t i = 0; i < dump.truth.size(); ++i) {
      out << dump.record_ids[i] << ',' << format_double(dump.scores[i]) << ',' << dump.predicted[i] << ','
          << dump.truth[i] << '\n';
    }
    finish(out, path);
  }

  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.manifest) manifest[k] = v;
  {
    const auto path = dir / "manifest.json";
    auto out = open_out(path);
    out << manifest.dump(2) << '\n';
    finish(out, path);
  }
  {
    nlohmann::ordered_json summary = {{"rows", nlohmann::ordered_json::array()},
                                      {"correlations", nlohmann::ordered_json::array()},
                                      {"manifest", manifest}};
    for (const auto& r : report.rows) summary["rows"].push_back(row_json(r));
    for (const auto& r : report.correlations) summary["correlations"].push_back(correlation_json(r));
    const auto path = dir / "summary.json";
    auto out = open_out(path);
    out << summary.dump(2) << '\n';
    finish(out, path);
  }
}

}  // namespace attrinf::pipeline
