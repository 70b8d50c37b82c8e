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

#include <cmath>
#include <random>
#include <sstream>

#include "attrinf/common/error.h"
#include "attrinf/explain/attribution_io.h"
#include "attrinf/explain/explainer.h"
#include "attrinf/explain/explainers.h"
#include "gtest/gtest.h"
#include "testing/testing.h"

namespace attrinf::explain {
namespace {

using attrinf::testing::linear_model;
using attrinf::testing::random_model;
using attrinf::testing::random_vector;
using nn::ScalarTarget;

constexpr auto kLogit = ScalarTarget::kPositiveLogit;
constexpr auto kProb = ScalarTarget::kPositiveProbability;

// Rescale-rule attributions of a one-hidden-layer net, written out by hand.
Eigen::VectorXd deeplift_one_hidden(const nn::MlpModel& m, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const Eigen::MatrixXd& w = m.weights()[0];
  const Eigen::VectorXd& c = m.biases()[0];
  const Eigen::RowVectorXd v = m.weights()[1].row(0);
  const Eigen::VectorXd z = w * x + c;
  const Eigen::VectorXd zb = w * b + c;
  Eigen::VectorXd mult(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double dz = z(j) - zb(j);
    mult(j) = std::abs(dz) > kDeepLiftEpsilon ? (std::max(z(j), 0.0) - std::max(zb(j), 0.0)) / dz
                                              : (z(j) > 0 ? 1.0 : 0.0);
  }
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) s += v(j) * mult(j) * w(j, i);
    out(i) = s * (x(i) - b(i));
  }
  return out;
}

TEST(LinearModel, AttributionsHaveClosedForm) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd w = random_vector(8, rng);
    const auto m = linear_model(w, 0.3);
    const Eigen::VectorXd x = random_vector(8, rng), b = random_vector(8, rng);
    ExplainerConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    cfg.ig_steps = 1 + trial;
    const Eigen::VectorXd expected = w.cwiseProduct(x - b);
    EXPECT_LE((integrated_gradients(m, x, b, cfg).scores - expected).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((deeplift(m, x, b).scores - expected).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((gradient_shap(m, x, b, cfg).scores - expected).cwiseAbs().maxCoeff(), 1e-9);
    cfg.smoothgrad_sigma = 0.05 * trial;
    EXPECT_LE((smoothgrad(m, x, b, cfg).scores - w).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(integrated_gradients(m, x, b, cfg).delta, 0.0, 1e-9);
  }
}

TEST(DeepLift, SumsToOutputDifference) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_model({7, 12, 9, 5, 1}, 50 + static_cast<std::uint64_t>(trial));
    const Eigen::VectorXd x = random_vector(7, rng), b = random_vector(7, rng);
    for (auto target : {kLogit, kProb}) {
      const auto a = deeplift(m, x, b, target);
      EXPECT_LE(std::abs(a.delta), 1e-9);
      EXPECT_NEAR(a.scores.sum(), m.forward(x, target) - m.forward(b, target), 1e-9);
    }
  }
}

TEST(DeepLift, MatchesHandWrittenRescaleRule) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_model({5, 11, 1}, 70 + static_cast<std::uint64_t>(trial));
    const Eigen::VectorXd x = random_vector(5, rng), b = random_vector(5, rng);
    EXPECT_LE((deeplift(m, x, b, kLogit).scores - deeplift_one_hidden(m, x, b)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DeepLift, EqualInputAndBaselineGivesZero) {
  const auto m = random_model({4, 6, 1}, 1);
  const Eigen::Vector4d x(0.1, 0.2, -0.3, 0.0);
  const auto a = deeplift(m, x, x);
  EXPECT_TRUE(a.scores.isZero());
  EXPECT_EQ(a.delta, 0.0);
}

TEST(IntegratedGradients, ConvergesToFineGridOracle) {
  std::mt19937_64 rng(5);
  const auto m = random_model({6, 10, 8, 1}, 2);
  ExplainerConfig coarse, fine;
  coarse.ig_steps = 200;
  fine.ig_steps = 5000;
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd x = random_vector(6, rng), b = random_vector(6, rng);
    const auto a = integrated_gradients(m, x, b, coarse);
    const auto oracle = integrated_gradients(m, x, b, fine);
    EXPECT_LE((a.scores - oracle.scores).cwiseAbs().maxCoeff(), 5e-2 * (1.0 + oracle.scores.cwiseAbs().maxCoeff()));
    EXPECT_LE(std::abs(oracle.delta), std::abs(a.delta) + 1e-3);
  }
}

TEST(IntegratedGradients, UsesMidpointRule) {
  // logit = relu(x - 0.5), baseline 0, x = 1. Two steps sample alpha = 0.25
  // (gradient 0) and 0.75 (gradient 1).
  const nn::MlpModel m({1, 1, 1}, {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)},
                       {Eigen::VectorXd::Constant(1, -0.5), Eigen::VectorXd::Zero(1)});
  ExplainerConfig cfg;
  cfg.ig_steps = 2;
  const auto a = integrated_gradients(m, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1), cfg);
  EXPECT_DOUBLE_EQ(a.scores(0), 0.5);
  EXPECT_DOUBLE_EQ(a.delta, 0.0);
}

TEST(Stochastic, SameSeedSameResultDifferentSeedDifferent) {
  const auto m = random_model({5, 8, 1}, 3);
  std::mt19937_64 rng(6);
  const Eigen::VectorXd x = random_vector(5, rng), b = random_vector(5, rng);
  ExplainerConfig cfg;
  cfg.seed = 1;
  auto other = cfg;
  other.seed = 2;
  EXPECT_EQ(gradient_shap(m, x, b, cfg).scores, gradient_shap(m, x, b, cfg).scores);
  EXPECT_NE(gradient_shap(m, x, b, cfg).scores, gradient_shap(m, x, b, other).scores);
  EXPECT_EQ(smoothgrad(m, x, b, cfg).scores, smoothgrad(m, x, b, cfg).scores);
  EXPECT_NE(smoothgrad(m, x, b, cfg).scores, smoothgrad(m, x, b, other).scores);
}

TEST(Stochastic, SmoothGradWithZeroSigmaIsGradient) {
  const auto m = random_model({5, 8, 1}, 4);
  std::mt19937_64 rng(7);
  const Eigen::VectorXd x = random_vector(5, rng);
  ExplainerConfig cfg;
  cfg.smoothgrad_sigma = 0.0;
  EXPECT_LE((smoothgrad(m, x, x, cfg).scores - m.input_gradient(x, kLogit)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Explainer, BatchIsIndependentOfThreadsAndComposition) {
  auto m = std::make_shared<const nn::MlpModel>(random_model({6, 10, 1}, 8));
  std::mt19937_64 rng(8);
  Eigen::MatrixXd xs(9, 6);
  for (int r = 0; r < 9; ++r) xs.row(r) = random_vector(6, rng).transpose();
  ExplainerConfig cfg;
  cfg.seed = 99;
  const Explainer e(m, mean_baseline(xs), cfg);
  std::vector<std::uint64_t> ids(9);
  for (int i = 0; i < 9; ++i) ids[static_cast<std::size_t>(i)] = 1000 + static_cast<std::uint64_t>(i);
  for (auto alg : {Algorithm::kIntegratedGradients, Algorithm::kDeepLift, Algorithm::kGradientShap,
                   Algorithm::kSmoothGrad}) {
    const auto serial = e.explain_batch(alg, xs, ids, 1);
    const auto parallel = e.explain_batch(alg, xs, ids, 4);
    for (int r = 0; r < 9; ++r) {
      EXPECT_EQ(serial[static_cast<std::size_t>(r)].scores, parallel[static_cast<std::size_t>(r)].scores);
      const auto single = e.explain(alg, xs.row(r).transpose(), ids[static_cast<std::size_t>(r)]);
      EXPECT_EQ(single.scores, serial[static_cast<std::size_t>(r)].scores);
      EXPECT_EQ(single.delta, serial[static_cast<std::size_t>(r)].delta);
    }
  }
  EXPECT_THROW(e.explain_batch(Algorithm::kDeepLift, xs, std::span(ids).first(3), 1), DimensionMismatch);
}

TEST(Attribution, RestrictAndAttackVector) {
  Attribution a;
  a.scores = Eigen::Vector4d(1, 2, 3, 4);
  a.delta = -0.5;
  const std::vector<int> cols = {3, 0};
  EXPECT_EQ(restrict(a, cols), Eigen::Vector2d(4, 1));
  Eigen::VectorXd v(5);
  v << 1, 2, 3, 4, -0.5;
  EXPECT_EQ(to_attack_vector(a), v);
  const std::vector<int> bad = {4};
  EXPECT_THROW(restrict(a, bad), InvalidArgument);
}

TEST(Attribution, AlgorithmNames) {
  for (auto alg : {Algorithm::kIntegratedGradients, Algorithm::kDeepLift, Algorithm::kGradientShap,
                   Algorithm::kSmoothGrad}) {
    EXPECT_EQ(parse_algorithm(to_string(alg)), alg);
  }
  EXPECT_THROW(parse_algorithm("lime"), InvalidArgument);
}

TEST(Explainers, RejectMismatchedShapes) {
  const auto m = random_model({3, 4, 1}, 1);
  ExplainerConfig cfg;
  EXPECT_THROW(integrated_gradients(m, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2), cfg), DimensionMismatch);
  EXPECT_THROW(deeplift(m, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)), DimensionMismatch);
  cfg.ig_steps = 0;
  EXPECT_THROW(integrated_gradients(m, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3), cfg), InvalidArgument);
}

TEST(AttributionIo, RoundTripsExactly) {
  const auto m = random_model({4, 5, 1}, 2);
  std::mt19937_64 rng(1);
  ExplainerConfig cfg;
  std::vector<ExplanationRecord> records;
  for (std::uint64_t id = 0; id < 3; ++id) {
    records.push_back({id * 7, gradient_shap(m, random_vector(4, rng), random_vector(4, rng), cfg, kProb)});
  }
  std::stringstream ss;
  write_explanations(ss, records);
  const auto back = read_explanations(ss);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].record_id, records[i].record_id);
    EXPECT_EQ(back[i].attribution.scores, records[i].attribution.scores);
    EXPECT_EQ(back[i].attribution.delta, records[i].attribution.delta);
    EXPECT_EQ(back[i].attribution.algorithm, Algorithm::kGradientShap);
    EXPECT_EQ(back[i].attribution.target, kProb);
  }
}

}  // namespace
}  // namespace attrinf::explain
