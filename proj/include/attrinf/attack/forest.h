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

#ifndef ATTRINF_ATTACK_FOREST_H_
#define ATTRINF_ATTACK_FOREST_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace attrinf::attack {

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 150;
  int min_leaf = 1;
  bool bootstrap = true;
  // Features examined per split: ceil(sqrt(d)) when true, all d otherwise.
  bool sqrt_features = true;

  void validate() const;
};

// Flat binary tree. Internal nodes send x[feature] <= threshold left.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // fraction of positive training rows reaching the node
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int depth() const;
};

// CART forest with Gini impurity. Each tree draws its own generator from
// derive_seed(seed, tree index), so trees can be grown in any order.
class RandomForest {
 public:
  RandomForest() = default;
  RandomForest(std::vector<DecisionTree> trees, int input_dim);

  static RandomForest fit(const Eigen::MatrixXd& features, std::span<const int> labels, const ForestConfig& cfg,
                          std::uint64_t seed);

  // Mean over trees of the leaf positive fraction.
  double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd score_batch(const Eigen::MatrixXd& xs) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  int input_dim() const { return input_dim_; }

  nlohmann::json to_json() const;
  static RandomForest from_json(const nlohmann::json& j);

 private:
  std::vector<DecisionTree> trees_;
  int input_dim_ = 0;
};

}  // namespace attrinf::attack

#endif  // ATTRINF_ATTACK_FOREST_H_
