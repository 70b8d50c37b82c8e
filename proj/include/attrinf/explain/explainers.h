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

#ifndef ATTRINF_EXPLAIN_EXPLAINERS_H_
#define ATTRINF_EXPLAIN_EXPLAINERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "attrinf/nn/mlp.h"

namespace attrinf::explain {

enum class Algorithm { kIntegratedGradients, kDeepLift, kGradientShap, kSmoothGrad };

// Wire names: integrated_gradients, deeplift, gradient_shap, smoothgrad.
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

// Attribution of one record relative to a baseline.
//
// delta is the signed completeness residual f(x) - f(baseline) - sum(scores)
// for every algorithm. It is exact up to rounding for DeepLift, a quadrature
// error for IntegratedGradients and purely informational for SmoothGrad.
struct Attribution {
  Algorithm algorithm = Algorithm::kIntegratedGradients;
  Eigen::VectorXd scores;
  double delta = 0.0;
  nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit;
  std::string baseline_id = "mean";
};

struct ExplainerConfig {
  int ig_steps = 50;
  int shap_samples = 20;
  double shap_stdev = 0.1;
  int smoothgrad_samples = 25;
  double smoothgrad_sigma = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Column-wise arithmetic mean.
Eigen::VectorXd mean_baseline(const Eigen::MatrixXd& features);

// Midpoint Riemann sum over ig_steps points alpha_k = (k + 0.5) / ig_steps.
Attribution integrated_gradients(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                                 const Eigen::Ref<const Eigen::VectorXd>& baseline,
                                 const ExplainerConfig& cfg,
                                 nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit);

// Rescale rule. A ReLU unit whose preactivation moves by more than
// kDeepLiftEpsilon uses (relu(z) - relu(z')) / (z - z'), otherwise the ReLU
// derivative at z; the sigmoid head (probability target) is treated alike.
inline constexpr double kDeepLiftEpsilon = 1e-7;
Attribution deeplift(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& baseline,
                     nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit);

// Each of shap_samples draws takes, from mt19937_64(cfg.seed), input_dim
// standard normals (scaled by shap_stdev) and then alpha ~ U[0,1); the sample
// contributes grad f(b + alpha (x + noise - b)) * (x - b). Scores are the mean.
Attribution gradient_shap(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& baseline,
                          const ExplainerConfig& cfg,
                          nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit);

// Mean input gradient over smoothgrad_samples copies of x perturbed by
// N(0, smoothgrad_sigma^2), input_dim normals per copy from mt19937_64(cfg.seed).
// The baseline only enters delta.
Attribution smoothgrad(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& baseline, const ExplainerConfig& cfg,
                       nn::ScalarTarget target = nn::ScalarTarget::kPositiveLogit);

// scores || [delta].
Eigen::VectorXd to_attack_vector(const Attribution& a);

// Scores at `columns`, in the given order. Delta is never appended.
Eigen::VectorXd restrict(const Attribution& a, std::span<const int> columns);

}  // namespace attrinf::explain

#endif  // ATTRINF_EXPLAIN_EXPLAINERS_H_
