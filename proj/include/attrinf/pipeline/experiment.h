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

#ifndef ATTRINF_PIPELINE_EXPERIMENT_H_
#define ATTRINF_PIPELINE_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/attack/attack_model.h"
#include "attrinf/common/error.h"
#include "attrinf/data/split.h"
#include "attrinf/explain/explainer.h"
#include "attrinf/pipeline/config.h"
#include "attrinf/pipeline/report.h"

namespace attrinf::serving {
class MlaasClient;
}

namespace attrinf::pipeline {

// A module error annotated with the pipeline stage it came from.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& message)
      : Error(message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Where the adversary's predictions and explanations come from.
class QuerySource {
 public:
  virtual ~QuerySource() = default;
  // P(y = 1) per row.
  virtual std::vector<double> predict(const Eigen::MatrixXd& xs) = 0;
  virtual std::vector<explain::Attribution> explain(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                                    std::span<const std::uint64_t> record_ids) = 0;
};

class InProcessSource : public QuerySource {
 public:
  InProcessSource(std::shared_ptr<const explain::Explainer> explainer, int threads);
  std::vector<double> predict(const Eigen::MatrixXd& xs) override;
  std::vector<explain::Attribution> explain(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                            std::span<const std::uint64_t> record_ids) override;

 private:
  std::shared_ptr<const explain::Explainer> explainer_;
  int threads_;
};

class RemoteSource : public QuerySource {
 public:
  explicit RemoteSource(const std::string& endpoint);
  ~RemoteSource() override;
  std::vector<double> predict(const Eigen::MatrixXd& xs) override;
  std::vector<explain::Attribution> explain(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                            std::span<const std::uint64_t> record_ids) override;

 private:
  std::unique_ptr<serving::MlaasClient> client_;
};

struct TargetModel {
  std::shared_ptr<const nn::MlpModel> model;
  Eigen::VectorXd baseline;  // mean of the training features
};

// Trains f_target on splits.target_train with the configured architecture
// and seeds.model.
TargetModel train_target(const data::DatasetSplits& splits, const ExperimentConfig& cfg);

std::shared_ptr<const explain::Explainer> make_explainer(const TargetModel& target, const ExperimentConfig& cfg);

// Attack of one cell: train on aux, calibrate tau* on aux, infer on eval.
struct CellResult {
  double tau_star = 0.0;
  double aux_f1 = 0.0;
  metrics::ConfusionCounts counts;
  metrics::PrCurve eval_curve;
  PredictionDump dump;
};

CellResult run_attack_cell(const Eigen::MatrixXd& aux_surface, std::span<const int> aux_s,
                           const Eigen::MatrixXd& eval_surface, std::span<const int> eval_s,
                           std::span<const std::uint64_t> eval_record_ids, const attack::AttackTrainConfig& cfg,
                           std::uint64_t seed);

struct RunOptions {
  bool attacks = true;
  bool audit = true;
  std::ostream* log = nullptr;  // progress lines
};

// Runs the whole matrix. Throws PipelineError.
AttackReport run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// Explanations and correlation rows only, no attack training.
std::vector<CorrelationRow> run_correlation_audit(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace attrinf::pipeline

#endif  // ATTRINF_PIPELINE_EXPERIMENT_H_
