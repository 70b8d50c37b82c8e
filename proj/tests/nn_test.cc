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

#include "attrinf/common/error.h"
#include "attrinf/nn/mlp.h"
#include "attrinf/nn/serialization.h"
#include "attrinf/nn/train.h"
#include "gtest/gtest.h"
#include "testing/testing.h"

namespace attrinf::nn {
namespace {

using attrinf::testing::linear_model;
using attrinf::testing::random_model;
using attrinf::testing::random_vector;

bool near_kink(const MlpModel& model, const Eigen::VectorXd& x, double margin) {
  const auto z = model.preactivations(x);
  for (std::size_t l = 0; l + 1 < z.size(); ++l) {
    if ((z[l].array().abs() < margin).any()) return true;
  }
  return false;
}

TEST(MlpModel, LinearForward) {
  const auto m = linear_model(Eigen::Vector2d(2.0, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(m.forward(Eigen::Vector2d(1.0, 1.0), ScalarTarget::kPositiveLogit), 1.0);
  EXPECT_DOUBLE_EQ(m.forward(Eigen::Vector2d(1.0, 1.0), ScalarTarget::kPositiveProbability), 1.0 / (1.0 + std::exp(-1.0)));
}

TEST(MlpModel, HandComputedTwoLayerNet) {
  // h = relu([1 -1; 2 0] x + [0; -1]); logit = [1 1] h + 0.5
  Eigen::MatrixXd w0(2, 2);
  w0 << 1, -1, 2, 0;
  Eigen::MatrixXd w1(1, 2);
  w1 << 1, 1;
  const MlpModel m({2, 2, 1}, {w0, w1}, {Eigen::Vector2d(0, -1), Eigen::VectorXd::Constant(1, 0.5)});
  // x = (3, 1): z = (2, 5) -> logit 7.5
  EXPECT_DOUBLE_EQ(m.forward(Eigen::Vector2d(3, 1), ScalarTarget::kPositiveLogit), 7.5);
  EXPECT_EQ(m.input_gradient(Eigen::Vector2d(3, 1), ScalarTarget::kPositiveLogit), Eigen::Vector2d(3, -1));
  // x = (-1, 1): z = (-2, -3) -> both off, gradient 0
  EXPECT_DOUBLE_EQ(m.forward(Eigen::Vector2d(-1, 1), ScalarTarget::kPositiveLogit), 0.5);
  EXPECT_EQ(m.input_gradient(Eigen::Vector2d(-1, 1), ScalarTarget::kPositiveLogit), Eigen::Vector2d(0, 0));
  // x = (0.5, 0): second unit exactly at 0, derivative taken as 0
  EXPECT_EQ(m.input_gradient(Eigen::Vector2d(0.5, 0), ScalarTarget::kPositiveLogit), Eigen::Vector2d(1, -1));
}

TEST(MlpModel, GlorotInitBoundsAndZeroBiases) {
  const auto m = MlpModel::init({30, 20, 10, 1}, 5);
  for (int l = 0; l < m.num_layers(); ++l) {
    const auto& w = m.weights()[static_cast<std::size_t>(l)];
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    EXPECT_LE(w.cwiseAbs().maxCoeff(), limit);
    EXPECT_GT(w.cwiseAbs().maxCoeff(), 0.5 * limit);
    EXPECT_TRUE(m.biases()[static_cast<std::size_t>(l)].isZero());
  }
  EXPECT_EQ(MlpModel::init({30, 20, 10, 1}, 5).weights()[1], m.weights()[1]);
  EXPECT_NE(MlpModel::init({30, 20, 10, 1}, 6).weights()[1], m.weights()[1]);
}

TEST(MlpModel, RejectsBadShapesAndValues) {
  EXPECT_THROW(MlpModel::init({3}, 0), InvalidArgument);
  EXPECT_THROW(MlpModel::init({3, 0, 1}, 0), InvalidArgument);
  EXPECT_THROW(MlpModel::init({3, 2}, 0), InvalidArgument);
  const auto m = MlpModel::init({3, 4, 1}, 0);
  EXPECT_THROW(m.forward(Eigen::VectorXd::Zero(2), ScalarTarget::kPositiveLogit), DimensionMismatch);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(3);
  bad(1) = std::nan("");
  EXPECT_THROW(m.forward(bad, ScalarTarget::kPositiveLogit), InvalidArgument);
  auto w = m.weights();
  w[0](0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(MlpModel({3, 4, 1}, w, m.biases()), InvalidArgument);
}

TEST(MlpModel, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(1);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_model({6, 16, 8, 1}, 100 + static_cast<std::uint64_t>(trial));
    Eigen::VectorXd x;
    do {
      x = random_vector(6, rng);
    } while (near_kink(m, x, 1e-3));
    for (auto target : {ScalarTarget::kPositiveLogit, ScalarTarget::kPositiveProbability}) {
      const Eigen::VectorXd g = m.input_gradient(x, target);
      for (int i = 0; i < 6; ++i) {
        Eigen::VectorXd up = x, down = x;
        up(i) += h;
        down(i) -= h;
        const double fd = (m.forward(up, target) - m.forward(down, target)) / (2 * h);
        EXPECT_NEAR(g(i), fd, 1e-4 * std::max(std::abs(fd), 1e-3)) << "trial " << trial << " component " << i;
      }
    }
  }
}

TEST(MlpModel, BatchAgreesWithSingleRecord) {
  std::mt19937_64 rng(2);
  const auto m = random_model({5, 7, 3, 1}, 9);
  Eigen::MatrixXd xs(4, 5);
  for (int r = 0; r < 4; ++r) xs.row(r) = random_vector(5, rng).transpose();
  Eigen::VectorXd outputs;
  const auto grads = m.input_gradient_batch(xs, ScalarTarget::kPositiveProbability, &outputs);
  const auto probs = m.forward_batch(xs, ScalarTarget::kPositiveProbability);
  for (int r = 0; r < 4; ++r) {
    EXPECT_NEAR(probs(r), m.forward(xs.row(r).transpose(), ScalarTarget::kPositiveProbability), 1e-15);
    EXPECT_NEAR(outputs(r), probs(r), 1e-15);
    EXPECT_TRUE(grads.row(r).transpose().isApprox(
        m.input_gradient(xs.row(r).transpose(), ScalarTarget::kPositiveProbability), 1e-12));
  }
}

struct Blobs {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Blobs make_blobs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Blobs b{Eigen::MatrixXd(n, 2), std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    b.y[static_cast<std::size_t>(i)] = y;
    b.x(i, 0) = (y ? 2.0 : -2.0) + normal(rng);
    b.x(i, 1) = normal(rng);
  }
  return b;
}

TEST(Train, LearnsSeparableBlobs) {
  const auto data = make_blobs(400, 3);
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-2;
  cfg.seed = 4;
  TrainStats stats;
  const auto model = train(MlpModel::init({2, 8, 1}, 1), data.x, data.y, cfg, &stats);
  EXPECT_LT(stats.final_loss, stats.initial_loss);
  EXPECT_EQ(stats.steps, 20 * 13);
  EXPECT_GE(evaluate_accuracy(model, data.x, data.y), 0.95);
  ASSERT_TRUE(model.train_config().has_value());
  EXPECT_EQ(model.train_config()->epochs, 20);
}

TEST(Train, IsDeterministicPerSeed) {
  const auto data = make_blobs(100, 5);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 16;  // several batches, so the shuffle order matters
  cfg.seed = 8;
  const auto a = train(MlpModel::init({2, 4, 1}, 1), data.x, data.y, cfg);
  const auto b = train(MlpModel::init({2, 4, 1}, 1), data.x, data.y, cfg);
  cfg.seed = 9;
  const auto c = train(MlpModel::init({2, 4, 1}, 1), data.x, data.y, cfg);
  EXPECT_EQ(a.weights()[0], b.weights()[0]);
  EXPECT_NE(a.weights()[0], c.weights()[0]);
}

TEST(Train, CrossEntropyMatchesDirectFormula) {
  const auto m = linear_model(Eigen::Vector2d(1.0, -2.0), 0.25);
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 0, 1, 3, 1;
  const std::vector<int> y = {1, 0, 1};
  double expected = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double p = sigmoid(x.row(i).dot(Eigen::Vector2d(1.0, -2.0)) + 0.25);
    expected -= y[static_cast<std::size_t>(i)] ? std::log(p) : std::log(1 - p);
  }
  EXPECT_NEAR(binary_cross_entropy(m, x, y), expected / 3.0, 1e-14);
}

TEST(Train, ReportsDivergenceAndBadInput) {
  const auto data = make_blobs(64, 6);
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.learning_rate = 1e300;
  EXPECT_THROW(train(MlpModel::init({2, 4, 1}, 1), data.x, data.y, cfg), TrainingDiverged);
  cfg.learning_rate = 1e-3;
  const std::vector<int> short_labels = {0, 1};
  EXPECT_THROW(train(MlpModel::init({2, 4, 1}, 1), data.x, short_labels, cfg), DimensionMismatch);
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Serialization, RoundTripIsBitExact) {
  auto m = random_model({4, 6, 1}, 12);
  const auto dir = attrinf::testing::temp_dir("nn_serialization");
  save_model(m, dir / "m.json");
  const auto back = load_model(dir / "m.json");
  ASSERT_EQ(back.layer_dims(), m.layer_dims());
  for (int l = 0; l < m.num_layers(); ++l) {
    EXPECT_EQ(back.weights()[static_cast<std::size_t>(l)], m.weights()[static_cast<std::size_t>(l)]);
    EXPECT_EQ(back.biases()[static_cast<std::size_t>(l)], m.biases()[static_cast<std::size_t>(l)]);
  }
  const Eigen::Vector4d x(0.1, -0.2, 0.3, 0.7);
  EXPECT_EQ(back.forward(x, ScalarTarget::kPositiveLogit), m.forward(x, ScalarTarget::kPositiveLogit));
  EXPECT_EQ(back.seed(), m.seed());
}

TEST(Serialization, KeepsTrainConfigAndRejectsGarbage) {
  const auto blobs = make_blobs(32, 2);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.learning_rate = 0.0123;
  const auto m = train(MlpModel::init({2, 3, 1}, 1), blobs.x, blobs.y, cfg);
  const auto back = model_from_json(model_to_json(m));
  ASSERT_TRUE(back.train_config().has_value());
  EXPECT_EQ(back.train_config()->learning_rate, 0.0123);
  EXPECT_THROW(model_from_json(nlohmann::json{{"format", "other"}}), ProtocolError);
  auto j = model_to_json(m);
  j["weights"][0].erase(0);
  EXPECT_THROW(model_from_json(j), Error);
}

TEST(ScalarTarget, NamesRoundTrip) {
  EXPECT_EQ(parse_scalar_target(to_string(ScalarTarget::kPositiveLogit)), ScalarTarget::kPositiveLogit);
  EXPECT_EQ(parse_scalar_target("probability"), ScalarTarget::kPositiveProbability);
  EXPECT_THROW(parse_scalar_target("softmax"), InvalidArgument);
}

}  // namespace
}  // namespace attrinf::nn
