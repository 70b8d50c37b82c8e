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

#include "attrinf/pipeline/experiment.h"

#include <algorithm>
#include <ostream>

#include "attrinf/attack/calibration.h"
#include "attrinf/attack/surface.h"
#include "attrinf/common/format.h"
#include "attrinf/common/rng.h"
#include "attrinf/data/schema.h"
#include "attrinf/data/table.h"
#include "attrinf/metrics/metrics.h"
#include "attrinf/nn/train.h"
#include "attrinf/pipeline/audit.h"
#include "attrinf/serving/client.h"
#include "attrinf/serving/server.h"
#include "attrinf/serving/service.h"

namespace attrinf::pipeline {

InProcessSource::InProcessSource(std::shared_ptr<const explain::Explainer> explainer, int threads)
    : explainer_(std::move(explainer)), threads_(threads) {}

std::vector<double> InProcessSource::predict(const Eigen::MatrixXd& xs) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(xs.rows()));
  for (Eigen::Index r = 0; r < xs.rows(); ++r) out.push_back(explainer_->predict(xs.row(r).transpose()));
  return out;
}

std::vector<explain::Attribution> InProcessSource::explain(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                                           std::span<const std::uint64_t> record_ids) {
  return explainer_->explain_batch(algorithm, xs, record_ids, threads_);
}

RemoteSource::RemoteSource(const std::string& endpoint)
    : client_(std::make_unique<serving::MlaasClient>(endpoint)) {}

RemoteSource::~RemoteSource() = default;

std::vector<double> RemoteSource::predict(const Eigen::MatrixXd& xs) { return client_->predict_batch(xs); }

std::vector<explain::Attribution> RemoteSource::explain(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                                        std::span<const std::uint64_t> record_ids) {
  return client_->fetch_explanations(algorithm, xs, record_ids);
}

TargetModel train_target(const data::DatasetSplits& splits, const ExperimentConfig& cfg) {
  std::vector<int> dims;
  dims.push_back(splits.target_train.dim());
  dims.insert(dims.end(), cfg.target_hidden.begin(), cfg.target_hidden.end());
  dims.push_back(1);
  nn::TrainConfig tc = cfg.target_train;
  tc.seed = derive_seed(cfg.seeds.model, 1);
  auto model = nn::train(nn::MlpModel::init(dims, derive_seed(cfg.seeds.model, 0)), splits.target_train.features,
                         splits.target_train.labels, tc);
  return {std::make_shared<const nn::MlpModel>(std::move(model)),
          explain::mean_baseline(splits.target_train.features)};
}

std::shared_ptr<const explain::Explainer> make_explainer(const TargetModel& target, const ExperimentConfig& cfg) {
  explain::ExplainerConfig ec = cfg.explainer;
  ec.seed = cfg.seeds.explainer;
  return std::make_shared<const explain::Explainer>(target.model, target.baseline, ec, cfg.explain_target);
}

CellResult run_attack_cell(const Eigen::MatrixXd& aux_surface, std::span<const int> aux_s,
                           const Eigen::MatrixXd& eval_surface, std::span<const int> eval_s,
                           std::span<const std::uint64_t> eval_record_ids, const attack::AttackTrainConfig& cfg,
                           std::uint64_t seed) {
  const auto model = attack::AttackModel::train(aux_surface, aux_s, cfg, seed);
  const auto threshold = attack::calibrate(model, aux_surface, aux_s);
  const Eigen::VectorXd scores = model.score(eval_surface);
  const std::span<const double> score_span(scores.data(), static_cast<std::size_t>(scores.size()));

  CellResult r;
  r.tau_star = threshold.tau_star;
  r.aux_f1 = threshold.achieved_f1_on_aux;
  r.dump.predicted = attack::apply_threshold(score_span, threshold.tau_star);
  r.dump.truth.assign(eval_s.begin(), eval_s.end());
  r.dump.scores.assign(score_span.begin(), score_span.end());
  r.dump.record_ids.assign(eval_record_ids.begin(), eval_record_ids.end());
  r.counts = metrics::confusion(r.dump.predicted, eval_s);
  r.eval_curve = metrics::pr_curve(score_span, eval_s);
  return r;
}

namespace {

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << std::endl;
}

// Every query the adversary makes for one threat model.
class Session {
 public:
  Session(const ExperimentConfig& cfg, const data::DatasetSplits& splits, std::ostream* log) {
    if (cfg.transport.kind == TransportKind::kRemote) {
      source_ = in_stage("serve", [&] { return std::make_unique<RemoteSource>(cfg.transport.endpoint); });
      return;
    }
    log_line(log, "training target model on " + std::to_string(splits.target_train.rows()) + " rows");
    const TargetModel target = in_stage("train_target", [&] { return train_target(splits, cfg); });
    auto explainer = make_explainer(target, cfg);
    if (cfg.transport.kind == TransportKind::kInProcess) {
      source_ = std::make_unique<InProcessSource>(explainer, cfg.threads);
      return;
    }
    in_stage("serve", [&] {
      server_ = std::make_unique<serving::HttpServer>(std::make_shared<serving::ExplanationService>(explainer),
                                                      serving::BindAddress{"127.0.0.1", 0});
      server_->start();
      log_line(log, "serving target model at " + server_->url());
      source_ = std::make_unique<RemoteSource>(server_->url());
    });
  }

  ~Session() {
    source_.reset();
    if (server_) server_->stop();
  }

  QuerySource& source() { return *source_; }

 private:
  std::unique_ptr<serving::HttpServer> server_;
  std::unique_ptr<QuerySource> source_;
};

std::vector<double> slice(const std::vector<double>& v, std::size_t begin, std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(begin + count)};
}

double accuracy_from(const std::vector<double>& probabilities, const std::vector<int>& labels) {
  if (labels.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += ((probabilities[i] >= 0.5 ? 1 : 0) == labels[i]);
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

struct Matrix {
  const ExperimentConfig& cfg;
  const RunOptions& options;
  const data::TabularSchema& schema;
  AttackReport report;

  void add_cell(attack::ThreatModel tm, const std::string& explainer, attack::AttackSurface surface,
                const data::DatasetSplits& splits, const attack::SurfaceLayout& layout,
                std::span<const explain::Attribution> aux_attr, std::span<const explain::Attribution> eval_attr,
                std::span<const double> aux_pred, std::span<const double> eval_pred, double accuracy) {
    AttackRow row;
    row.dataset = schema.name;
    row.sensitive = schema.sensitive_column;
    row.threat_model = std::string(attack::to_string(tm));
    row.explainer = explainer;
    row.surface = std::string(attack::to_string(surface));
    row.attack_kind = std::string(attack::to_string(cfg.attack.kind));
    row.target_test_accuracy = accuracy;
    log_line(options.log, "attack " + row.cell_id());

    const auto [aux_x, eval_x] = in_stage("surface", [&] {
      return std::pair{attack::build_surface_matrix(aux_attr, aux_pred, surface, layout),
                       attack::build_surface_matrix(eval_attr, eval_pred, surface, layout)};
    });
    CellResult r = in_stage("attack", [&] {
      return run_attack_cell(aux_x, splits.aux.sensitive, eval_x, splits.eval.sensitive, splits.eval.record_ids,
                             cfg.attack, cfg.seeds.attack);
    });
    row.tau_star = r.tau_star;
    row.aux_f1 = r.aux_f1;
    row.counts = r.counts;
    row.precision = metrics::precision(r.counts);
    row.recall = metrics::recall(r.counts);
    row.f1 = metrics::f1(r.counts);
    row.base_rate = data::sensitive_base_rate(splits.eval);
    row.all_positive_f1 = metrics::all_positive_f1(row.base_rate);
    log_line(options.log, "  precision " + format_double(row.precision) + " recall " + format_double(row.recall) +
                              " f1 " + format_double(row.f1) + " (all-positive f1 " +
                              format_double(row.all_positive_f1) + ")");
    report.curves[row.cell_id()] = std::move(r.eval_curve);
    report.predictions[row.cell_id()] = std::move(r.dump);
    report.rows.push_back(std::move(row));
  }

  void run_threat_model(attack::ThreatModel tm, const data::RawTable& raw) {
    const std::string tm_name(attack::to_string(tm));
    const bool with_s = tm == attack::ThreatModel::kWithSensitive;
    const auto splits = in_stage("split", [&] { return data::prepare_splits(raw, schema, with_s, cfg.seeds.split); });
    const std::string prefix = tm_name + ".";
    report.manifest.emplace_back(prefix + "input_dim", std::to_string(splits.target_train.dim()));
    report.manifest.emplace_back(prefix + "rows.target_train", std::to_string(splits.target_train.rows()));
    report.manifest.emplace_back(prefix + "rows.aux", std::to_string(splits.aux.rows()));
    report.manifest.emplace_back(prefix + "rows.eval", std::to_string(splits.eval.rows()));
    report.manifest.emplace_back(prefix + "unknown_categories.test", std::to_string(splits.test.unknown_categories));
    report.manifest.emplace_back(prefix + "base_rate.aux", format_double(data::sensitive_base_rate(splits.aux)));
    report.manifest.emplace_back(prefix + "base_rate.eval", format_double(data::sensitive_base_rate(splits.eval)));

    Session session(cfg, splits, options.log);
    const auto test_pred = in_stage("predict", [&] { return session.source().predict(splits.test.features); });
    const double accuracy = accuracy_from(test_pred, splits.test.labels);
    report.manifest.emplace_back(prefix + "target_test_accuracy", format_double(accuracy));
    log_line(options.log, tm_name + " target test accuracy " + format_double(accuracy));
    const auto aux_pred = slice(test_pred, 0, splits.aux.rows());
    const auto eval_pred = slice(test_pred, splits.aux.rows(), splits.eval.rows());

    const attack::SurfaceLayout layout{splits.eval.sensitive_columns(), splits.eval.nonsensitive_columns()};
    const AuditContext ctx{schema.name, tm_name};
    if (options.audit) {
      auto rows = in_stage("audit", [&] { return audit_data(splits.eval, ctx); });
      report.correlations.insert(report.correlations.end(), rows.begin(), rows.end());
    }

    const auto& surfaces = cfg.surfaces_for(tm);
    const bool explained_attack =
        options.attacks && std::any_of(surfaces.begin(), surfaces.end(), attack::needs_explanation);
    if (explained_attack || options.audit) {
      for (auto alg : cfg.explainers) {
        const std::string alg_name(explain::to_string(alg));
        log_line(options.log, tm_name + " explaining aux and eval with " + alg_name);
        const auto aux_attr = in_stage("explain", [&] {
          return session.source().explain(alg, splits.aux.features, splits.aux.record_ids);
        });
        const auto eval_attr = in_stage("explain", [&] {
          return session.source().explain(alg, splits.eval.features, splits.eval.record_ids);
        });
        if (options.audit) {
          auto rows = in_stage("audit", [&] { return audit_attributions(splits.eval, eval_attr, alg_name, ctx); });
          report.correlations.insert(report.correlations.end(), rows.begin(), rows.end());
        }
        if (!options.attacks) continue;
        for (auto surface : surfaces) {
          if (!attack::needs_explanation(surface)) continue;
          add_cell(tm, alg_name, surface, splits, layout, aux_attr, eval_attr, aux_pred, eval_pred, accuracy);
        }
      }
    }
    if (!options.attacks) return;
    for (auto surface : surfaces) {
      if (attack::needs_explanation(surface)) continue;
      add_cell(tm, "none", surface, splits, layout, {}, {}, aux_pred, eval_pred, accuracy);
    }
  }
};

}  // namespace

AttackReport run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  in_stage("config", [&] { cfg.validate(); });
  const auto schema = in_stage("load", [&] { return data::TabularSchema::load(cfg.schema); });
  const auto raw = in_stage("load", [&] { return data::load_csv(cfg.dataset, schema); });
  log_line(options.log, "loaded " + std::to_string(raw.rows()) + " rows (" + std::to_string(raw.dropped_missing) +
                            " dropped for missing values)");

  Matrix m{cfg, options, schema, {}};
  m.report.manifest = cfg.describe();
  m.report.manifest.emplace_back("dataset.name", schema.name);
  m.report.manifest.emplace_back("dataset.sensitive", schema.sensitive_column);
  m.report.manifest.emplace_back("dataset.rows", std::to_string(raw.rows()));
  m.report.manifest.emplace_back("dataset.dropped_missing", std::to_string(raw.dropped_missing));
  for (auto tm : cfg.threat_models) m.run_threat_model(tm, raw);
  return std::move(m.report);
}

std::vector<CorrelationRow> run_correlation_audit(const ExperimentConfig& cfg, std::ostream* log) {
  RunOptions options;
  options.attacks = false;
  options.log = log;
  return run_experiment(cfg, options).correlations;
}

}  // namespace attrinf::pipeline
