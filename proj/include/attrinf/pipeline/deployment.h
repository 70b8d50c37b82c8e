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

#ifndef ATTRINF_PIPELINE_DEPLOYMENT_H_
#define ATTRINF_PIPELINE_DEPLOYMENT_H_

#include <filesystem>

#include <Eigen/Dense>

#include "attrinf/explain/explainers.h"
#include "attrinf/nn/mlp.h"

namespace attrinf::pipeline {

// What the service needs besides the model weights: the baseline and the
// explainer settings. Stored as JSON next to the model file.
struct Deployment {
  Eigen::VectorXd baseline;
  explain::ExplainerConfig explainer;
  nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit;
};

void save_deployment(const Deployment& d, const std::filesystem::path& path);
// Throws IoError or ProtocolError.
Deployment load_deployment(const std::filesystem::path& path);

}  // namespace attrinf::pipeline

#endif  // ATTRINF_PIPELINE_DEPLOYMENT_H_
