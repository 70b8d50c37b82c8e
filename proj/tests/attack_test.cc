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

#include <algorithm>
#include <random>
#include <set>

#include "attrinf/attack/attack_model.h"
#include "attrinf/attack/calibration.h"
#include "attrinf/attack/forest.h"
#include "attrinf/attack/surface.h"
#include "attrinf/common/error.h"
#include "attrinf/metrics/metrics.h"
#include "gtest/gtest.h"
#include "testing/testing.h"

namespace attrinf::attack {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.begin(), static_cast<Eigen::Index>(v.size()));
}

explain::Attribution attribution(std::initializer_list<double> scores, double delta) {
  explain::Attribution a;
  a.scores = Eigen::Map<const Eigen::VectorXd>(scores.begin(), static_cast<Eigen::Index>(scores.size()));
  a.delta = delta;
  return a;
}

TEST(Surface, BuildsEveryVariant) {
  const SurfaceLayout layout{{3}, {0, 1, 2}};
  const auto a = attribution({0.1, 0.2, 0.3, 0.9}, -0.05);
  EXPECT_EQ(build_surface(&a, std::nullopt, AttackSurface::kPhiAll, layout),
            vec({0.1, 0.2, 0.3, 0.9, -0.05}));
  EXPECT_EQ(build_surface(&a, std::nullopt, AttackSurface::kPhiSensitive, layout), Eigen::VectorXd::Constant(1, 0.9));
  EXPECT_EQ(build_surface(&a, std::nullopt, AttackSurface::kPhiNonSensitive, layout),
            vec({0.1, 0.2, 0.3, -0.05}));
  EXPECT_EQ(build_surface(&a, 0.7, AttackSurface::kPredPlusPhi, layout),
            vec({0.7, 0.1, 0.2, 0.3, -0.05}));
  EXPECT_EQ(build_surface(nullptr, 0.7, AttackSurface::kPredOnly, layout), Eigen::VectorXd::Constant(1, 0.7));
  for (auto s : {AttackSurface::kPhiAll, AttackSurface::kPhiSensitive, AttackSurface::kPhiNonSensitive,
                 AttackSurface::kPredPlusPhi, AttackSurface::kPredOnly}) {
    EXPECT_EQ(build_surface(&a, 0.5, s, layout).size(), layout.surface_dim(s));
    EXPECT_EQ(parse_surface(to_string(s)), s);
  }
}

TEST(Surface, RespectsThreatModelRules) {
  EXPECT_TRUE(valid_for(AttackSurface::kPhiAll, ThreatModel::kWithSensitive));
  EXPECT_FALSE(valid_for(AttackSurface::kPhiAll, ThreatModel::kWithoutSensitive));
  EXPECT_FALSE(valid_for(AttackSurface::kPhiSensitive, ThreatModel::kWithoutSensitive));
  EXPECT_TRUE(valid_for(AttackSurface::kPhiNonSensitive, ThreatModel::kWithoutSensitive));
  EXPECT_TRUE(valid_for(AttackSurface::kPredOnly, ThreatModel::kWithoutSensitive));

  const SurfaceLayout censored{{}, {0, 1}};
  const auto a = attribution({0.1, 0.2}, 0.0);
  EXPECT_THROW(build_surface(&a, std::nullopt, AttackSurface::kPhiSensitive, censored), InvalidArgument);
  EXPECT_THROW(build_surface(&a, std::nullopt, AttackSurface::kPredPlusPhi, censored), InvalidArgument);
  const auto wide = attribution({0.1, 0.2, 0.3}, 0.0);
  EXPECT_THROW(build_surface(&wide, std::nullopt, AttackSurface::kPhiNonSensitive, censored), DimensionMismatch);
  EXPECT_THROW(parse_surface("phi_everything"), InvalidArgument);
  EXPECT_THROW(parse_threat_model("tm3"), InvalidArgument);
}

TEST(Surface, MatrixStacksRows) {
  const SurfaceLayout layout{{}, {0, 1}};
  const std::vector<explain::Attribution> attrs = {attribution({1, 2}, 3), attribution({4, 5}, 6)};
  const std::vector<double> preds = {0.25, 0.75};
  Eigen::MatrixXd expected(2, 4);
  expected << 0.25, 1, 2, 3, 0.75, 4, 5, 6;
  EXPECT_EQ(build_surface_matrix(attrs, preds, AttackSurface::kPredPlusPhi, layout), expected);
  EXPECT_EQ(build_surface_matrix({}, preds, AttackSurface::kPredOnly, layout), Eigen::Vector2d(0.25, 0.75));
  EXPECT_THROW(build_surface_matrix(attrs, std::span(preds).first(1), AttackSurface::kPredPlusPhi, layout),
               DimensionMismatch);
}

// Repeated XOR corners with a little jitter.
void xor_data(int n, std::uint64_t seed, Eigen::MatrixXd& x, std::vector<int>& y) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  x.resize(n, 2);
  y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int a = i % 2, b = (i / 2) % 2;
    x(i, 0) = a + jitter(rng);
    x(i, 1) = b + jitter(rng);
    y[static_cast<std::size_t>(i)] = a ^ b;
  }
}

double accuracy(const RandomForest& f, const Eigen::MatrixXd& x, const std::vector<int>& y) {
  const auto s = f.score_batch(x);
  int correct = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) correct += (s(i) >= 0.5) == (y[static_cast<std::size_t>(i)] == 1);
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

TEST(Forest, StumpsCannotLearnXorButDeepTreesCan) {
  Eigen::MatrixXd x;
  std::vector<int> y;
  xor_data(200, 1, x, y);
  ForestConfig cfg;
  cfg.n_trees = 15;
  cfg.sqrt_features = false;
  cfg.max_depth = 1;
  const auto stumps = RandomForest::fit(x, y, cfg, 3);
  EXPECT_LE(accuracy(stumps, x, y), 0.75);
  for (const auto& t : stumps.trees()) EXPECT_LE(t.depth(), 1);
  cfg.max_depth = 150;
  const auto deep = RandomForest::fit(x, y, cfg, 3);
  EXPECT_EQ(accuracy(deep, x, y), 1.0);
}

TEST(Forest, TraversalFollowsLessOrEqualRule) {
  DecisionTree t;
  // root: x0 <= 0.5 ? node1 : node2; node1: x1 <= -1 ? leaf 0.1 : leaf 0.2
  t.nodes = {{0, 0.5, 1, 2, 0.0}, {1, -1.0, 3, 4, 0.0}, {-1, 0, -1, -1, 0.9}, {-1, 0, -1, -1, 0.1},
             {-1, 0, -1, -1, 0.2}};
  EXPECT_EQ(t.predict(Eigen::Vector2d(0.5, -1.0)), 0.1);
  EXPECT_EQ(t.predict(Eigen::Vector2d(0.5, -0.9)), 0.2);
  EXPECT_EQ(t.predict(Eigen::Vector2d(0.51, -5.0)), 0.9);
  EXPECT_EQ(t.depth(), 2);
  const RandomForest f({t, t}, 2);
  EXPECT_EQ(f.score(Eigen::Vector2d(0.0, 0.0)), 0.2);
  EXPECT_THROW(f.score(Eigen::Vector3d::Zero()), DimensionMismatch);
  DecisionTree bad = t;
  bad.nodes[0].left = 9;
  EXPECT_THROW(RandomForest({bad}, 2), InvalidArgument);
}

TEST(Forest, LeafValuesAreTrainingFractions) {
  // Without bootstrap and with a depth-0 tree, the root value is the base rate.
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 2, 3;
  const std::vector<int> y = {1, 0, 0, 0};
  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  cfg.max_depth = 0;
  EXPECT_EQ(RandomForest::fit(x, y, cfg, 0).score(Eigen::VectorXd::Constant(1, 9.0)), 0.25);
  cfg.max_depth = 150;
  const auto full = RandomForest::fit(x, y, cfg, 0);
  EXPECT_EQ(full.score(Eigen::VectorXd::Constant(1, 0.0)), 1.0);
  EXPECT_EQ(full.score(Eigen::VectorXd::Constant(1, 0.6)), 0.0);  // threshold at midpoint 0.5
  EXPECT_EQ(full.score(Eigen::VectorXd::Constant(1, 0.5)), 1.0);
}

TEST(Forest, DeterministicAndSerializable) {
  Eigen::MatrixXd x;
  std::vector<int> y;
  xor_data(60, 2, x, y);
  ForestConfig cfg;
  cfg.n_trees = 5;
  const auto a = RandomForest::fit(x, y, cfg, 7);
  const auto b = RandomForest::fit(x, y, cfg, 7);
  const auto c = RandomForest::fit(x, y, cfg, 8);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_NE(a.to_json(), c.to_json());
  const auto back = RandomForest::from_json(a.to_json());
  EXPECT_EQ(back.score_batch(x), a.score_batch(x));
}

// F1 of every distinct-score threshold, by direct counting.
std::pair<double, double> brute_force_best(const std::vector<double>& scores, const std::vector<int>& truth) {
  std::set<double> candidates(scores.begin(), scores.end());
  double best_f1 = -1.0, best_tau = 0.0;
  for (double tau : candidates) {  // ascending, so strict > keeps the smallest tau
    std::vector<int> predicted(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = scores[i] >= tau;
    const auto c = metrics::confusion(predicted, truth);
    const double f = 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
    if (f > best_f1 + 1e-15) {
      best_f1 = f;
      best_tau = tau;
    }
  }
  return {best_f1, best_tau};
}

TEST(Calibration, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(2, 60);
  std::uniform_int_distribution<int> level(0, 9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    std::vector<double> scores(n);
    std::vector<int> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = level(rng) / 10.0;
      truth[i] = u(rng) < 0.5;
    }
    truth[0] = 1;
    truth[1] = 0;
    const auto got = calibrate_scores(scores, truth);
    const auto [f1, tau] = brute_force_best(scores, truth);
    EXPECT_NEAR(got.achieved_f1_on_aux, f1, 1e-15) << "trial " << trial;
    EXPECT_EQ(got.tau_star, tau) << "trial " << trial;
  }
}

TEST(Calibration, PrefersSmallestThresholdOnTies) {
  // tau = 0.8 -> tp 1, fp 0, fn 1: F1 2/3. tau = 0.2 -> tp 2, fp 2, fn 0: F1 2/3.
  const std::vector<double> scores = {0.8, 0.2, 0.2, 0.2};
  const std::vector<int> truth = {1, 1, 0, 0};
  const auto c = calibrate_scores(scores, truth, "tie");
  EXPECT_EQ(c.tau_star, 0.2);
  EXPECT_DOUBLE_EQ(c.achieved_f1_on_aux, 2.0 / 3.0);
  EXPECT_EQ(c.curve_id, "tie");
  EXPECT_EQ(apply_threshold(scores, c.tau_star), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Calibration, RejectsSingleClass) {
  const std::vector<double> scores = {0.1, 0.2};
  const std::vector<int> ones = {1, 1};
  EXPECT_THROW(calibrate_scores(scores, ones), InvalidArgument);
  const std::vector<int> short_truth = {1};
  EXPECT_THROW(calibrate_scores(scores, short_truth), DimensionMismatch);
}

struct Separable {
  Eigen::MatrixXd x;
  std::vector<int> s;
};

Separable separable(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Separable d{Eigen::MatrixXd(n, 3), std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    const int s = i % 3 == 0;
    d.s[static_cast<std::size_t>(i)] = s;
    // Large offset and scale on one column: standardization matters.
    d.x(i, 0) = 1000.0 + 50.0 * (s ? 1.0 : -1.0) + 10.0 * normal(rng);
    d.x(i, 1) = normal(rng);
    d.x(i, 2) = normal(rng);
  }
  return d;
}

TEST(AttackModel, MlpLearnsSeparableAttribute) {
  const auto d = separable(120, 1);
  AttackTrainConfig cfg;
  cfg.mlp_train.epochs = 60;
  const auto m = AttackModel::train(d.x, d.s, cfg, 5);
  EXPECT_EQ(m.kind(), AttackKind::kMlp);
  EXPECT_EQ(m.input_dim(), 3);
  ASSERT_NE(m.mlp(), nullptr);
  EXPECT_EQ(m.mlp()->layer_dims(), (std::vector<int>{3, 64, 128, 32, 1}));
  const auto c = calibrate(m, d.x, d.s);
  EXPECT_EQ(c.achieved_f1_on_aux, 1.0);
  const auto predicted = infer(m, c, d.x);
  EXPECT_EQ(metrics::f1(metrics::confusion(predicted, d.s)), 1.0);
}

TEST(AttackModel, ForestVariantAndSerialization) {
  const auto d = separable(90, 2);
  AttackTrainConfig cfg;
  cfg.kind = AttackKind::kRandomForest;
  cfg.forest.n_trees = 10;
  const auto forest = AttackModel::train(d.x, d.s, cfg, 1);
  ASSERT_NE(forest.forest(), nullptr);
  EXPECT_EQ(forest.mlp(), nullptr);
  cfg.kind = AttackKind::kMlp;
  cfg.mlp_train.epochs = 5;
  const auto mlp = AttackModel::train(d.x, d.s, cfg, 1);
  const auto dir = attrinf::testing::temp_dir("attack_model");
  for (const auto* m : {&forest, &mlp}) {
    m->save(dir / "m.json");
    const auto back = AttackModel::load(dir / "m.json");
    EXPECT_EQ(back.kind(), m->kind());
    EXPECT_EQ(back.score(d.x), m->score(d.x));
  }
}

TEST(AttackModel, ValidatesTrainingData) {
  const auto d = separable(30, 3);
  AttackTrainConfig cfg;
  cfg.mlp_train.epochs = 1;
  const std::vector<int> zeros(30, 0);
  EXPECT_THROW(AttackModel::train(d.x, zeros, cfg, 0), InvalidArgument);
  EXPECT_THROW(AttackModel::train(d.x, std::span(d.s).first(10), cfg, 0), DimensionMismatch);
  const auto m = AttackModel::train(d.x, d.s, cfg, 0);
  EXPECT_THROW(m.score(Eigen::MatrixXd::Zero(2, 4)), DimensionMismatch);
  EXPECT_THROW(parse_attack_kind("svm"), InvalidArgument);
}

TEST(Standardizer, ZeroMeanUnitScaleAndConstantColumns) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  const auto s = Standardizer::fit(x);
  const auto z = s.apply(x);
  EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
  EXPECT_NEAR(z.col(0).squaredNorm() / 4.0, 1.0, 1e-12);
  EXPECT_EQ(s.scale(1), 1.0);
  EXPECT_TRUE(z.col(1).isZero());
}

}  // namespace
}  // namespace attrinf::attack
