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

#include "attrinf/attack/calibration.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "attrinf/common/error.h"
#include "attrinf/metrics/metrics.h"

namespace attrinf::attack {

CalibratedThreshold calibrate_scores(std::span<const double> scores, std::span<const int> truth,
                                     std::string curve_id) {
  if (scores.size() != truth.size()) throw DimensionMismatch("scores and labels differ in length");
  long positives = 0;
  for (int t : truth) {
    if (t != 0 && t != 1) throw InvalidArgument("labels must be 0 or 1");
    positives += t;
  }
  const long n = static_cast<long>(truth.size());
  if (positives == 0 || positives == n) throw InvalidArgument("calibration needs both classes");
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgument("calibration scores must be finite");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Sweep thresholds from the largest score down; at each distinct score the
  // predicted-positive set is every record with score >= it.
  long tp = 0, fp = 0;
  long best_num = -1, best_den = 1;
  double best_tau = scores[order.front()];
  for (std::size_t i = 0; i < order.size();) {
    const double tau = scores[order[i]];
    while (i < order.size() && scores[order[i]] == tau) {
      (truth[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    const long fn = positives - tp;
    const long num = 2 * tp;
    const long den = 2 * tp + fp + fn;
    // Later candidates are smaller, so >= keeps the smallest tau on ties.
    if (best_num < 0 || static_cast<__int128>(num) * best_den >= static_cast<__int128>(best_num) * den) {
      best_num = num;
      best_den = den;
      best_tau = tau;
    }
  }
  return {best_tau, static_cast<double>(best_num) / static_cast<double>(best_den), std::move(curve_id)};
}

CalibratedThreshold calibrate(const AttackModel& model, const Eigen::MatrixXd& aux_features,
                              std::span<const int> aux_s, std::string curve_id) {
  const Eigen::VectorXd scores = model.score(aux_features);
  return calibrate_scores(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())), aux_s,
                          std::move(curve_id));
}

std::vector<int> apply_threshold(std::span<const double> scores, double tau) {
  std::vector<int> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= tau ? 1 : 0;
  return out;
}

std::vector<int> infer(const AttackModel& model, const CalibratedThreshold& threshold,
                       const Eigen::MatrixXd& features) {
  const Eigen::VectorXd scores = model.score(features);
  return apply_threshold(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())),
                         threshold.tau_star);
}

}  // namespace attrinf::attack
