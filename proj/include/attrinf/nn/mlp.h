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

#ifndef ATTRINF_NN_MLP_H_
#define ATTRINF_NN_MLP_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace attrinf::nn {

// Which scalar of the binary head gradients and attributions refer to.
enum class ScalarTarget {
  kPositiveLogit,        // pre-sigmoid output
  kPositiveProbability,  // sigmoid(logit) = P(y = 1)
};

std::string_view to_string(ScalarTarget target);
ScalarTarget parse_scalar_target(std::string_view name);

struct TrainConfig {
  int epochs = 30;
  double learning_rate = 1e-3;
  int batch_size = 128;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 0;

  // Throws InvalidArgument when a field is out of range.
  void validate() const;
};

double sigmoid(double z);

// Fully connected ReLU network with a single sigmoid output unit.
//
// weights()[i] has shape (layer_dims[i + 1], layer_dims[i]); rows of a batch
// matrix are records. The ReLU derivative at exactly 0 is taken to be 0.
class MlpModel {
 public:
  // Validates shapes and finiteness of every parameter.
  MlpModel(std::vector<int> layer_dims, std::vector<Eigen::MatrixXd> weights,
           std::vector<Eigen::VectorXd> biases, std::uint64_t seed = 0);

  // Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases,
  // drawn layer by layer in row-major order from mt19937_64(seed).
  static MlpModel init(std::vector<int> layer_dims, std::uint64_t seed);

  int input_dim() const { return layer_dims_.front(); }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }
  std::uint64_t seed() const { return seed_; }
  const std::optional<TrainConfig>& train_config() const { return train_config_; }

  double forward(const Eigen::Ref<const Eigen::VectorXd>& x, ScalarTarget target) const;
  Eigen::VectorXd forward_batch(const Eigen::MatrixXd& xs, ScalarTarget target) const;

  Eigen::VectorXd input_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                 ScalarTarget target) const;
  // Row r of the result is the gradient at row r of `xs`. When `outputs` is
  // given it receives the selected scalar for every row.
  Eigen::MatrixXd input_gradient_batch(const Eigen::MatrixXd& xs, ScalarTarget target,
                                       Eigen::VectorXd* outputs = nullptr) const;

  // Preactivations of every layer (hidden layers first, output logit last).
  std::vector<Eigen::VectorXd> preactivations(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  friend class Trainer;
  friend MlpModel with_train_config(MlpModel model, const TrainConfig& cfg);

  void check_input(const Eigen::MatrixXd& xs) const;

  std::vector<int> layer_dims_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
  std::uint64_t seed_ = 0;
  std::optional<TrainConfig> train_config_;
};

MlpModel with_train_config(MlpModel model, const TrainConfig& cfg);

}  // namespace attrinf::nn

#endif  // ATTRINF_NN_MLP_H_
