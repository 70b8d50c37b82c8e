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

#ifndef ATTRINF_ATTACK_ATTACK_MODEL_H_
#define ATTRINF_ATTACK_ATTACK_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/attack/forest.h"
#include "attrinf/nn/mlp.h"
#include "json.hpp"

namespace attrinf::attack {

enum class AttackKind { kMlp, kRandomForest };

std::string_view to_string(AttackKind kind);  // "mlp" / "forest"
AttackKind parse_attack_kind(std::string_view name);

struct AttackTrainConfig {
  AttackKind kind = AttackKind::kMlp;
  std::vector<int> mlp_hidden = {64, 128, 32};
  nn::TrainConfig mlp_train = {.epochs = 500, .learning_rate = 1e-3, .batch_size = 64};
  // Z-score attack inputs with statistics of the attack training rows
  // before they reach the MLP. Forests ignore it.
  bool standardize = true;
  ForestConfig forest;
};

// Input standardization carried inside a trained attack model.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer identity(int dim);
  static Standardizer fit(const Eigen::MatrixXd& features);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& xs) const;
};

// f_adv: maps attack-surface vectors to a score P(s = 1) in [0, 1].
class AttackModel {
 public:
  AttackModel(nn::MlpModel mlp, Standardizer standardizer);
  explicit AttackModel(RandomForest forest);

  // Throws InvalidArgument for single-class labels and DimensionMismatch for
  // shape mismatches.
  static AttackModel train(const Eigen::MatrixXd& features, std::span<const int> s_labels,
                           const AttackTrainConfig& cfg, std::uint64_t seed);

  AttackKind kind() const;
  int input_dim() const;
  Eigen::VectorXd score(const Eigen::MatrixXd& features) const;

  const nn::MlpModel* mlp() const;
  const RandomForest* forest() const;

  nlohmann::json to_json() const;
  static AttackModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static AttackModel load(const std::filesystem::path& path);

 private:
  struct MlpPart {
    nn::MlpModel model;
    Standardizer standardizer;
  };
  std::variant<MlpPart, RandomForest> impl_;
};

}  // namespace attrinf::attack

#endif  // ATTRINF_ATTACK_ATTACK_MODEL_H_
