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

#ifndef ATTRINF_ATTACK_CALIBRATION_H_
#define ATTRINF_ATTACK_CALIBRATION_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/attack/attack_model.h"

namespace attrinf::attack {

struct CalibratedThreshold {
  double tau_star = 0.5;
  double achieved_f1_on_aux = 0.0;
  std::string curve_id;
};

// Candidates are the distinct scores; a record is predicted s = 1 iff
// score >= tau. Returns the candidate with maximal F1, the smallest one on
// ties. F1 values are compared exactly as rationals 2tp / (2tp + fp + fn).
// Throws InvalidArgument unless both classes are present.
CalibratedThreshold calibrate_scores(std::span<const double> scores, std::span<const int> truth,
                                     std::string curve_id = "aux");

CalibratedThreshold calibrate(const AttackModel& model, const Eigen::MatrixXd& aux_features,
                              std::span<const int> aux_s, std::string curve_id = "aux");

std::vector<int> apply_threshold(std::span<const double> scores, double tau);

std::vector<int> infer(const AttackModel& model, const CalibratedThreshold& threshold,
                       const Eigen::MatrixXd& features);

}  // namespace attrinf::attack

#endif  // ATTRINF_ATTACK_CALIBRATION_H_
