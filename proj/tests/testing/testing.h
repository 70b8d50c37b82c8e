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

#ifndef ATTRINF_TESTS_TESTING_TESTING_H_
#define ATTRINF_TESTS_TESTING_TESTING_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/nn/mlp.h"
#include "attrinf/pipeline/config.h"

namespace attrinf::testing {

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);

Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0);

// Glorot weights plus small random biases, so that no layer is bias-free.
nn::MlpModel random_model(const std::vector<int>& dims, std::uint64_t seed);

// Model with a single linear layer: logit = w.x + b.
nn::MlpModel linear_model(const Eigen::VectorXd& w, double b);

struct SyntheticFiles {
  std::filesystem::path csv;
  std::filesystem::path schema;
};

// `n` rows with numeric x0..x2, categorical color, sensitive group and label.
// group is "a" exactly when x0 > 0, and |x0| >= 1 so the two groups are
// separated by a gap. The label depends on x0 and x1.
SyntheticFiles write_synthetic(const std::filesystem::path& dir, int n, std::uint64_t seed);

// `n` rows of categorical region, size and color plus sensitive group and
// label. group is "a" exactly when region is north or east, and every record
// is one of 36 feature vectors, so aux and eval share attribution vectors.
SyntheticFiles write_discrete_synthetic(const std::filesystem::path& dir, int n, std::uint64_t seed);

// Small, fast experiment over write_synthetic output.
pipeline::ExperimentConfig synthetic_config(const SyntheticFiles& files, const std::filesystem::path& out);

}  // namespace attrinf::testing

#endif  // ATTRINF_TESTS_TESTING_TESTING_H_
