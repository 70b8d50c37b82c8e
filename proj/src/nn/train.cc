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

#include "attrinf/nn/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "attrinf/common/error.h"

namespace attrinf::nn {

namespace {

void check_training_set(const MlpModel& model, const Eigen::MatrixXd& features,
                        std::span<const int> labels) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw DimensionMismatch("feature rows and label count differ");
  }
  if (features.cols() != model.input_dim()) {
    throw DimensionMismatch("feature columns do not match the model input dimension");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw InvalidArgument("labels must be 0 or 1");
  }
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

class Trainer {
 public:
  Trainer(MlpModel& model, const TrainConfig& cfg) : model_(model), cfg_(cfg) {
    for (int l = 0; l < model.num_layers(); ++l) {
      m_w_.push_back(Eigen::MatrixXd::Zero(model.weights_[l].rows(), model.weights_[l].cols()));
      v_w_.push_back(m_w_.back());
      m_b_.push_back(Eigen::VectorXd::Zero(model.biases_[l].size()));
      v_b_.push_back(m_b_.back());
    }
  }

  // One Adam step on the rows `batch`; returns the mean batch loss.
  double step(const Eigen::MatrixXd& features, std::span<const int> labels,
              std::span<const std::size_t> batch) {
    const int layers = model_.num_layers();
    const auto n = static_cast<Eigen::Index>(batch.size());
    Eigen::MatrixXd x(n, features.cols());
    for (Eigen::Index r = 0; r < n; ++r) x.row(r) = features.row(static_cast<Eigen::Index>(batch[r]));

    // activations[l] is the input of layer l.
    std::vector<Eigen::MatrixXd> activations;
    std::vector<Eigen::MatrixXd> zs;
    activations.push_back(std::move(x));
    for (int l = 0; l < layers; ++l) {
      Eigen::MatrixXd z = activations.back() * model_.weights_[l].transpose();
      z.rowwise() += model_.biases_[l].transpose();
      if (l + 1 < layers) activations.push_back(z.cwiseMax(0.0));
      zs.push_back(std::move(z));
    }

    double loss = 0.0;
    Eigen::MatrixXd g(n, 1);
    for (Eigen::Index r = 0; r < n; ++r) {
      const double z = zs.back()(r, 0);
      const int y = labels[batch[r]];
      loss += softplus(z) - y * z;
      g(r, 0) = (sigmoid(z) - y) / static_cast<double>(n);
    }
    loss /= static_cast<double>(n);
    if (!std::isfinite(loss)) {
      throw TrainingDiverged("training diverged: non-finite loss at step " + std::to_string(t_ + 1));
    }

    ++t_;
    const double bias1 = 1.0 - std::pow(cfg_.adam_beta1, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(cfg_.adam_beta2, static_cast<double>(t_));
    for (int l = layers - 1; l >= 0; --l) {
      Eigen::MatrixXd grad_w = g.transpose() * activations[l];
      Eigen::VectorXd grad_b = g.colwise().sum().transpose();
      if (l > 0) {
        Eigen::MatrixXd ga = g * model_.weights_[l];
        g = ga.cwiseProduct((zs[l - 1].array() > 0.0).cast<double>().matrix());
      }
      adam_update(model_.weights_[l], m_w_[l], v_w_[l], grad_w, bias1, bias2);
      adam_update(model_.biases_[l], m_b_[l], v_b_[l], grad_b, bias1, bias2);
    }
    return loss;
  }

 private:
  template <typename Param, typename Grad>
  void adam_update(Param& param, Param& m, Param& v, const Grad& grad, double bias1, double bias2) {
    const double b1 = cfg_.adam_beta1;
    const double b2 = cfg_.adam_beta2;
    m = b1 * m + (1.0 - b1) * grad;
    v = b2 * v + (1.0 - b2) * grad.cwiseProduct(grad);
    param.array() -= cfg_.learning_rate * (m.array() / bias1) /
                     ((v.array() / bias2).sqrt() + cfg_.adam_epsilon);
  }

  MlpModel& model_;
  const TrainConfig& cfg_;
  long t_ = 0;
  std::vector<Eigen::MatrixXd> m_w_, v_w_;
  std::vector<Eigen::VectorXd> m_b_, v_b_;
};

MlpModel train(MlpModel model, const Eigen::MatrixXd& features, std::span<const int> labels,
               const TrainConfig& cfg, TrainStats* stats) {
  cfg.validate();
  check_training_set(model, features, labels);
  if (stats) {
    *stats = TrainStats{};
    if (features.rows() > 0) stats->initial_loss = binary_cross_entropy(model, features, labels);
  }
  if (features.rows() > 0 && cfg.epochs > 0) {
    Trainer trainer(model, cfg);
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(static_cast<std::size_t>(features.rows()));
    long steps = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
        const std::size_t len = std::min(order.size() - start, static_cast<std::size_t>(cfg.batch_size));
        trainer.step(features, labels, std::span<const std::size_t>(order).subspan(start, len));
        ++steps;
      }
    }
    if (stats) stats->steps = steps;
  }
  if (stats && features.rows() > 0) stats->final_loss = binary_cross_entropy(model, features, labels);
  return with_train_config(std::move(model), cfg);
}

double binary_cross_entropy(const MlpModel& model, const Eigen::MatrixXd& features,
                            std::span<const int> labels) {
  check_training_set(model, features, labels);
  if (features.rows() == 0) throw InvalidArgument("cross-entropy of an empty set");
  const Eigen::VectorXd logits = model.forward_batch(features, ScalarTarget::kPositiveLogit);
  double loss = 0.0;
  for (Eigen::Index r = 0; r < logits.size(); ++r) loss += softplus(logits(r)) - labels[r] * logits(r);
  return loss / static_cast<double>(logits.size());
}

double evaluate_accuracy(const MlpModel& model, const Eigen::MatrixXd& features,
                         std::span<const int> labels) {
  check_training_set(model, features, labels);
  if (features.rows() == 0) throw InvalidArgument("accuracy of an empty set");
  const Eigen::VectorXd p = model.forward_batch(features, ScalarTarget::kPositiveProbability);
  long correct = 0;
  for (Eigen::Index r = 0; r < p.size(); ++r) {
    const int predicted = p(r) >= 0.5 ? 1 : 0;
    if (predicted == labels[r]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(p.size());
}

}  // namespace attrinf::nn
