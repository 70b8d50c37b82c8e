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

#include "attrinf/nn/mlp.h"

#include <cmath>
#include <random>
#include <string>

#include "attrinf/common/error.h"

namespace attrinf::nn {

std::string_view to_string(ScalarTarget target) {
  switch (target) {
    case ScalarTarget::kPositiveLogit:
      return "logit";
    case ScalarTarget::kPositiveProbability:
      return "probability";
  }
  return "unknown";
}

ScalarTarget parse_scalar_target(std::string_view name) {
  if (name == "logit") return ScalarTarget::kPositiveLogit;
  if (name == "probability") return ScalarTarget::kPositiveProbability;
  throw InvalidArgument("unknown scalar target '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (epochs < 0) throw InvalidArgument("epochs must be non-negative");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be positive");
  if (batch_size < 1) throw InvalidArgument("batch_size must be positive");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0)) throw InvalidArgument("adam_beta1 must lie in (0,1)");
  if (!(adam_beta2 > 0.0 && adam_beta2 < 1.0)) throw InvalidArgument("adam_beta2 must lie in (0,1)");
  if (!(adam_epsilon > 0.0)) throw InvalidArgument("adam_epsilon must be positive");
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) throw InvalidArgument("an MLP needs at least an input and an output layer");
  for (int d : dims) {
    if (d <= 0) throw InvalidArgument("layer dimensions must be positive");
  }
  if (dims.back() != 1) throw InvalidArgument("the output layer must have exactly one unit");
}

}  // namespace

MlpModel::MlpModel(std::vector<int> layer_dims, std::vector<Eigen::MatrixXd> weights,
                   std::vector<Eigen::VectorXd> biases, std::uint64_t seed)
    : layer_dims_(std::move(layer_dims)),
      weights_(std::move(weights)),
      biases_(std::move(biases)),
      seed_(seed) {
  check_dims(layer_dims_);
  const std::size_t n = layer_dims_.size() - 1;
  if (weights_.size() != n || biases_.size() != n) {
    throw DimensionMismatch("expected " + std::to_string(n) + " weight and bias tensors");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i].rows() != layer_dims_[i + 1] || weights_[i].cols() != layer_dims_[i]) {
      throw DimensionMismatch("weights[" + std::to_string(i) + "] has the wrong shape");
    }
    if (biases_[i].size() != layer_dims_[i + 1]) {
      throw DimensionMismatch("biases[" + std::to_string(i) + "] has the wrong length");
    }
    if (!weights_[i].allFinite() || !biases_[i].allFinite()) {
      throw InvalidArgument("model parameters must be finite");
    }
  }
}

MlpModel MlpModel::init(std::vector<int> layer_dims, std::uint64_t seed) {
  check_dims(layer_dims);
  std::mt19937_64 rng(seed);
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  for (std::size_t i = 0; i + 1 < layer_dims.size(); ++i) {
    const int fan_in = layer_dims[i];
    const int fan_out = layer_dims[i + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = dist(rng);
    }
    weights.push_back(std::move(w));
    biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return MlpModel(std::move(layer_dims), std::move(weights), std::move(biases), seed);
}

void MlpModel::check_input(const Eigen::MatrixXd& xs) const {
  if (xs.cols() != input_dim()) {
    throw DimensionMismatch("input has " + std::to_string(xs.cols()) + " features, model expects " +
                            std::to_string(input_dim()));
  }
  if (!xs.allFinite()) throw InvalidArgument("input contains non-finite values");
}

double MlpModel::forward(const Eigen::Ref<const Eigen::VectorXd>& x, ScalarTarget target) const {
  if (x.size() != input_dim()) {
    throw DimensionMismatch("input has " + std::to_string(x.size()) + " features, model expects " +
                            std::to_string(input_dim()));
  }
  if (!x.allFinite()) throw InvalidArgument("input contains non-finite values");
  Eigen::VectorXd a = x;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::VectorXd z = weights_[l] * a + biases_[l];
    a = (l + 1 < num_layers()) ? Eigen::VectorXd(z.cwiseMax(0.0)) : z;
  }
  const double logit = a(0);
  return target == ScalarTarget::kPositiveLogit ? logit : sigmoid(logit);
}

Eigen::VectorXd MlpModel::forward_batch(const Eigen::MatrixXd& xs, ScalarTarget target) const {
  check_input(xs);
  Eigen::MatrixXd a = xs;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::MatrixXd z = a * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < num_layers()) {
      a = z.cwiseMax(0.0);
    } else {
      a = std::move(z);
    }
  }
  Eigen::VectorXd out = a.col(0);
  if (target == ScalarTarget::kPositiveProbability) out = out.unaryExpr(&sigmoid);
  return out;
}

Eigen::VectorXd MlpModel::input_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                         ScalarTarget target) const {
  Eigen::MatrixXd xs = x.transpose();
  return input_gradient_batch(xs, target).row(0).transpose();
}

Eigen::MatrixXd MlpModel::input_gradient_batch(const Eigen::MatrixXd& xs, ScalarTarget target,
                                               Eigen::VectorXd* outputs) const {
  check_input(xs);
  const int layers = num_layers();
  std::vector<Eigen::MatrixXd> hidden_z;
  hidden_z.reserve(layers - 1);
  Eigen::MatrixXd a = xs;
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = a * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < layers) {
      a = z.cwiseMax(0.0);
      hidden_z.push_back(std::move(z));
    } else {
      a = std::move(z);
    }
  }
  Eigen::VectorXd logits = a.col(0);
  Eigen::MatrixXd g(xs.rows(), 1);
  if (target == ScalarTarget::kPositiveLogit) {
    g.setOnes();
    if (outputs) *outputs = logits;
  } else {
    Eigen::VectorXd p = logits.unaryExpr(&sigmoid);
    g.col(0) = p.array() * (1.0 - p.array());
    if (outputs) *outputs = p;
  }
  for (int l = layers - 1; l >= 0; --l) {
    Eigen::MatrixXd ga = g * weights_[l];
    if (l > 0) {
      g = ga.cwiseProduct((hidden_z[l - 1].array() > 0.0).cast<double>().matrix());
    } else {
      g = std::move(ga);
    }
  }
  return g;
}

std::vector<Eigen::VectorXd> MlpModel::preactivations(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != input_dim()) throw DimensionMismatch("input dimension mismatch");
  if (!x.allFinite()) throw InvalidArgument("input contains non-finite values");
  std::vector<Eigen::VectorXd> zs;
  Eigen::VectorXd a = x;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::VectorXd z = weights_[l] * a + biases_[l];
    a = z.cwiseMax(0.0);
    zs.push_back(std::move(z));
  }
  return zs;
}

MlpModel with_train_config(MlpModel model, const TrainConfig& cfg) {
  model.train_config_ = cfg;
  return model;
}

}  // namespace attrinf::nn
