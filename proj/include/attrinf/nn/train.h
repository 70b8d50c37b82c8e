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

#ifndef ATTRINF_NN_TRAIN_H_
#define ATTRINF_NN_TRAIN_H_

#include <span>

#include "attrinf/nn/mlp.h"

namespace attrinf::nn {

struct TrainStats {
  double initial_loss = 0.0;
  double final_loss = 0.0;
  long steps = 0;
};

// Mini-batch Adam on mean binary cross-entropy, no regularization. Rows are
// reshuffled every epoch with mt19937_64(cfg.seed); the last batch of an
// epoch may be short. Throws TrainingDiverged on a non-finite batch loss.
MlpModel train(MlpModel model, const Eigen::MatrixXd& features, std::span<const int> labels,
               const TrainConfig& cfg, TrainStats* stats = nullptr);

// Mean binary cross-entropy computed from logits.
double binary_cross_entropy(const MlpModel& model, const Eigen::MatrixXd& features,
                            std::span<const int> labels);

// Fraction of rows where (P(y=1) >= 0.5) equals the label.
double evaluate_accuracy(const MlpModel& model, const Eigen::MatrixXd& features,
                         std::span<const int> labels);

}  // namespace attrinf::nn

#endif  // ATTRINF_NN_TRAIN_H_
