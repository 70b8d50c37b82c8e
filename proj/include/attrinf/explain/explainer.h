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

#ifndef ATTRINF_EXPLAIN_EXPLAINER_H_
#define ATTRINF_EXPLAIN_EXPLAINER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "attrinf/explain/explainers.h"

namespace attrinf::explain {

// A trained model bound to its baseline and explainer settings.
//
// Stochastic explainers seed each record with derive_seed(cfg.seed, record_id)
// so results do not depend on batch composition or thread count. Without a
// record id fresh entropy is drawn.
class Explainer {
 public:
  Explainer(std::shared_ptr<const nn::MlpModel> model, Eigen::VectorXd baseline, ExplainerConfig cfg,
            nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit, std::string baseline_id = "mean");

  const nn::MlpModel& model() const { return *model_; }
  const Eigen::VectorXd& baseline() const { return baseline_; }
  const ExplainerConfig& config() const { return cfg_; }
  nn::ScalarTarget target() const { return target_; }

  Attribution explain(Algorithm algorithm, const Eigen::Ref<const Eigen::VectorXd>& x,
                      std::optional<std::uint64_t> record_id) const;

  // One attribution per row of `xs`, in row order. `threads` <= 0 uses the
  // hardware concurrency.
  std::vector<Attribution> explain_batch(Algorithm algorithm, const Eigen::MatrixXd& xs,
                                         std::span<const std::uint64_t> record_ids, int threads = 1) const;

  // P(y = 1) for the record.
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::shared_ptr<const nn::MlpModel> model_;
  Eigen::VectorXd baseline_;
  ExplainerConfig cfg_;
  nn::ScalarTarget target_;
  std::string baseline_id_;
};

}  // namespace attrinf::explain

#endif  // ATTRINF_EXPLAIN_EXPLAINER_H_
