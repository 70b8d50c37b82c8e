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

#include "attrinf/explain/explainers.h"

#include <cmath>
#include <random>

#include "attrinf/common/error.h"

namespace attrinf::explain {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kIntegratedGradients:
      return "integrated_gradients";
    case Algorithm::kDeepLift:
      return "deeplift";
    case Algorithm::kGradientShap:
      return "gradient_shap";
    case Algorithm::kSmoothGrad:
      return "smoothgrad";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "integrated_gradients") return Algorithm::kIntegratedGradients;
  if (name == "deeplift") return Algorithm::kDeepLift;
  if (name == "gradient_shap") return Algorithm::kGradientShap;
  if (name == "smoothgrad") return Algorithm::kSmoothGrad;
  throw InvalidArgument("unknown explanation algorithm '" + std::string(name) + "'");
}

void ExplainerConfig::validate() const {
  if (ig_steps < 1) throw InvalidArgument("ig_steps must be at least 1");
  if (shap_samples < 1) throw InvalidArgument("shap_samples must be at least 1");
  if (smoothgrad_samples < 1) throw InvalidArgument("smoothgrad_samples must be at least 1");
  if (!(shap_stdev >= 0.0) || !std::isfinite(shap_stdev)) throw InvalidArgument("shap_stdev must be >= 0");
  if (!(smoothgrad_sigma >= 0.0) || !std::isfinite(smoothgrad_sigma)) {
    throw InvalidArgument("smoothgrad_sigma must be >= 0");
  }
}

Eigen::VectorXd mean_baseline(const Eigen::MatrixXd& features) {
  if (features.rows() == 0 || features.cols() == 0) throw InvalidArgument("mean baseline of an empty matrix");
  return features.colwise().mean().transpose();
}

namespace {

void check_pair(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& baseline) {
  if (x.size() != model.input_dim() || baseline.size() != model.input_dim()) {
    throw DimensionMismatch("input and baseline must have the model's input dimension (" +
                            std::to_string(model.input_dim()) + ")");
  }
}

Attribution finish(Algorithm algorithm, Eigen::VectorXd scores, const nn::MlpModel& model,
                   const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& baseline,
                   nn::ScalarTarget target) {
  Attribution a;
  a.algorithm = algorithm;
  a.delta = model.forward(x, target) - model.forward(baseline, target) - scores.sum();
  a.scores = std::move(scores);
  a.target = target;
  return a;
}

double rescale(double z, double z_ref, double (*fn)(double), double (*deriv)(double)) {
  const double dz = z - z_ref;
  if (std::abs(dz) > kDeepLiftEpsilon) return (fn(z) - fn(z_ref)) / dz;
  return deriv(z);
}

double relu(double z) { return z > 0.0 ? z : 0.0; }
double relu_deriv(double z) { return z > 0.0 ? 1.0 : 0.0; }
double sigmoid_deriv(double z) {
  const double p = nn::sigmoid(z);
  return p * (1.0 - p);
}

}  // namespace

Attribution integrated_gradients(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                                 const Eigen::Ref<const Eigen::VectorXd>& baseline,
                                 const ExplainerConfig& cfg, nn::ScalarTarget target) {
  cfg.validate();
  check_pair(model, x, baseline);
  const int steps = cfg.ig_steps;
  const Eigen::VectorXd diff = x - baseline;
  Eigen::MatrixXd path(steps, x.size());
  for (int k = 0; k < steps; ++k) {
    const double alpha = (k + 0.5) / steps;
    path.row(k) = (baseline + alpha * diff).transpose();
  }
  const Eigen::MatrixXd grads = model.input_gradient_batch(path, target);
  Eigen::VectorXd scores = diff.cwiseProduct(grads.colwise().mean().transpose());
  return finish(Algorithm::kIntegratedGradients, std::move(scores), model, x, baseline, target);
}

Attribution deeplift(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& baseline, nn::ScalarTarget target) {
  check_pair(model, x, baseline);
  const auto zs = model.preactivations(x);
  const auto zs_ref = model.preactivations(baseline);
  const int layers = model.num_layers();

  // Multiplier of the explained scalar with respect to the output logit.
  Eigen::VectorXd m(1);
  m(0) = target == nn::ScalarTarget::kPositiveLogit
             ? 1.0
             : rescale(zs.back()(0), zs_ref.back()(0), &nn::sigmoid, &sigmoid_deriv);
  for (int l = layers - 1; l >= 0; --l) {
    Eigen::VectorXd m_in = model.weights()[l].transpose() * m;
    if (l > 0) {
      const auto& z = zs[l - 1];
      const auto& z_ref = zs_ref[l - 1];
      for (Eigen::Index j = 0; j < m_in.size(); ++j) m_in(j) *= rescale(z(j), z_ref(j), &relu, &relu_deriv);
    }
    m = std::move(m_in);
  }
  Eigen::VectorXd scores = m.cwiseProduct(x - baseline);
  return finish(Algorithm::kDeepLift, std::move(scores), model, x, baseline, target);
}

Attribution gradient_shap(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& baseline, const ExplainerConfig& cfg,
                          nn::ScalarTarget target) {
  cfg.validate();
  check_pair(model, x, baseline);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Eigen::Index d = x.size();
  Eigen::MatrixXd points(cfg.shap_samples, d);
  for (int s = 0; s < cfg.shap_samples; ++s) {
    Eigen::VectorXd noisy(d);
    for (Eigen::Index i = 0; i < d; ++i) noisy(i) = x(i) + cfg.shap_stdev * normal(rng);
    const double alpha = uniform(rng);
    points.row(s) = (baseline + alpha * (noisy - baseline)).transpose();
  }
  const Eigen::MatrixXd grads = model.input_gradient_batch(points, target);
  Eigen::VectorXd scores = grads.colwise().mean().transpose().cwiseProduct(x - baseline);
  return finish(Algorithm::kGradientShap, std::move(scores), model, x, baseline, target);
}

Attribution smoothgrad(const nn::MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& baseline, const ExplainerConfig& cfg,
                       nn::ScalarTarget target) {
  cfg.validate();
  check_pair(model, x, baseline);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index d = x.size();
  Eigen::MatrixXd points(cfg.smoothgrad_samples, d);
  for (int s = 0; s < cfg.smoothgrad_samples; ++s) {
    for (Eigen::Index i = 0; i < d; ++i) points(s, i) = x(i) + cfg.smoothgrad_sigma * normal(rng);
  }
  const Eigen::MatrixXd grads = model.input_gradient_batch(points, target);
  Eigen::VectorXd scores = grads.colwise().mean().transpose();
  return finish(Algorithm::kSmoothGrad, std::move(scores), model, x, baseline, target);
}

Eigen::VectorXd to_attack_vector(const Attribution& a) {
  Eigen::VectorXd v(a.scores.size() + 1);
  v.head(a.scores.size()) = a.scores;
  v(a.scores.size()) = a.delta;
  return v;
}

Eigen::VectorXd restrict(const Attribution& a, std::span<const int> columns) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int c = columns[i];
    if (c < 0 || c >= a.scores.size()) {
      throw InvalidArgument("column " + std::to_string(c) + " is outside the attribution");
    }
    v(static_cast<Eigen::Index>(i)) = a.scores(c);
  }
  return v;
}

}  // namespace attrinf::explain
