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

#include "attrinf/attack/forest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "attrinf/common/error.h"
#include "attrinf/common/rng.h"

namespace attrinf::attack {

void ForestConfig::validate() const {
  if (n_trees < 1) throw InvalidArgument("forest needs at least one tree");
  if (max_depth < 0) throw InvalidArgument("max_depth must be non-negative");
  if (min_leaf < 1) throw InvalidArgument("min_leaf must be at least 1");
}

double DecisionTree::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    i = x(n.feature) <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].value;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return best;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, std::span<const int> y, const ForestConfig& cfg, std::mt19937_64& rng)
      : x_(x), y_(y), cfg_(cfg), rng_(rng) {
    const int d = static_cast<int>(x.cols());
    max_features_ = cfg.sqrt_features ? std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))))) : d;
    features_.resize(static_cast<std::size_t>(d));
    std::iota(features_.begin(), features_.end(), 0);
  }

  DecisionTree build(std::vector<int> rows) {
    grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  // Weighted child Gini impurity, n_l * gini_l + n_r * gini_r.
  static double weighted_gini(double n_l, double pos_l, double n_r, double pos_r) {
    auto g = [](double n, double pos) {
      const double p = pos / n;
      return n * 2.0 * p * (1.0 - p);
    };
    return g(n_l, pos_l) + g(n_r, pos_r);
  }

  int grow(std::vector<int> rows, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const double n = static_cast<double>(rows.size());
    double pos = 0.0;
    for (int r : rows) pos += y_[static_cast<std::size_t>(r)];
    tree_.nodes[static_cast<std::size_t>(index)].value = pos / n;

    const bool pure = pos == 0.0 || pos == n;
    if (pure || depth >= cfg_.max_depth || rows.size() < 2 * static_cast<std::size_t>(cfg_.min_leaf)) {
      return index;
    }
    const Split best = find_split(rows, pos);
    if (best.feature < 0) return index;

    std::vector<int> left, right;
    for (int r : rows) (x_(r, best.feature) <= best.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left), depth + 1);
    const int rt = grow(std::move(right), depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = rt;
    return index;
  }

  // Examines features in random order until max_features non-constant ones
  // have been tried.
  Split find_split(const std::vector<int>& rows, double total_pos) {
    Split best;
    double best_impurity = std::numeric_limits<double>::infinity();
    const std::size_t d = features_.size();
    const std::size_t n = rows.size();
    std::vector<std::pair<double, int>> sorted(n);
    int tried = 0;
    for (std::size_t k = 0; k < d && tried < max_features_; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, d - 1);
      std::swap(features_[k], features_[pick(rng_)]);
      const int f = features_[k];
      for (std::size_t i = 0; i < n; ++i) sorted[i] = {x_(rows[i], f), y_[static_cast<std::size_t>(rows[i])]};
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (sorted.front().first == sorted.back().first) continue;
      ++tried;
      double pos_left = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        pos_left += sorted[i - 1].second;
        if (sorted[i].first == sorted[i - 1].first) continue;
        if (i < static_cast<std::size_t>(cfg_.min_leaf) || n - i < static_cast<std::size_t>(cfg_.min_leaf)) continue;
        const double imp = weighted_gini(static_cast<double>(i), pos_left, static_cast<double>(n - i),
                                         total_pos - pos_left);
        if (imp < best_impurity) {
          best_impurity = imp;
          const double a = sorted[i - 1].first;
          const double b = sorted[i].first;
          double t = a + (b - a) / 2.0;
          if (!(t >= a && t < b)) t = a;
          best = {f, t, imp};
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  const ForestConfig& cfg_;
  std::mt19937_64& rng_;
  int max_features_ = 1;
  std::vector<int> features_;
  DecisionTree tree_;
};

}  // namespace

RandomForest::RandomForest(std::vector<DecisionTree> trees, int input_dim)
    : trees_(std::move(trees)), input_dim_(input_dim) {
  if (trees_.empty()) throw InvalidArgument("forest has no trees");
  for (const auto& t : trees_) {
    if (t.nodes.empty()) throw InvalidArgument("forest has an empty tree");
    for (const auto& n : t.nodes) {
      const auto count = static_cast<int>(t.nodes.size());
      if (n.feature >= input_dim || (n.feature >= 0 && (n.left <= 0 || n.left >= count || n.right <= 0 ||
                                                        n.right >= count))) {
        throw InvalidArgument("malformed tree node");
      }
    }
  }
}

RandomForest RandomForest::fit(const Eigen::MatrixXd& features, std::span<const int> labels,
                               const ForestConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (features.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw DimensionMismatch("feature rows and label count differ");
  }
  if (features.rows() == 0 || features.cols() == 0) throw InvalidArgument("cannot fit a forest on empty data");
  if (!features.allFinite()) throw InvalidArgument("forest features must be finite");
  const auto n = static_cast<int>(features.rows());
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(cfg.n_trees));
  for (int t = 0; t < cfg.n_trees; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<int> rows(static_cast<std::size_t>(n));
    if (cfg.bootstrap) {
      std::uniform_int_distribution<int> draw(0, n - 1);
      for (auto& r : rows) r = draw(rng);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    TreeBuilder builder(features, labels, cfg, rng);
    trees.push_back(builder.build(std::move(rows)));
  }
  return RandomForest(std::move(trees), static_cast<int>(features.cols()));
}

double RandomForest::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != input_dim_) throw DimensionMismatch("forest input has the wrong width");
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.predict(x);
  return sum / static_cast<double>(trees_.size());
}

Eigen::VectorXd RandomForest::score_batch(const Eigen::MatrixXd& xs) const {
  if (xs.cols() != input_dim_) throw DimensionMismatch("forest input has the wrong width");
  Eigen::VectorXd out(xs.rows());
  for (Eigen::Index r = 0; r < xs.rows(); ++r) out(r) = score(xs.row(r).transpose());
  return out;
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    trees.push_back(std::move(nodes));
  }
  return {{"input_dim", input_dim_}, {"trees", std::move(trees)}};
}

RandomForest RandomForest::from_json(const nlohmann::json& j) {
  std::vector<DecisionTree> trees;
  for (const auto& tj : j.at("trees")) {
    DecisionTree t;
    for (const auto& nj : tj) {
      t.nodes.push_back({nj.at(0).get<int>(), nj.at(1).get<double>(), nj.at(2).get<int>(), nj.at(3).get<int>(),
                         nj.at(4).get<double>()});
    }
    trees.push_back(std::move(t));
  }
  return RandomForest(std::move(trees), j.at("input_dim").get<int>());
}

}  // namespace attrinf::attack
