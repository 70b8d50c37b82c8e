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

#ifndef ATTRINF_ATTACK_SURFACE_H_
#define ATTRINF_ATTACK_SURFACE_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/explain/explainers.h"

namespace attrinf::attack {

// TM1: s is a model input. TM2: s is censored from training and inputs.
enum class ThreatModel { kWithSensitive, kWithoutSensitive };

std::string_view to_string(ThreatModel tm);  // "tm1" / "tm2"
ThreatModel parse_threat_model(std::string_view name);

enum class AttackSurface {
  kPhiAll,           // phi(x u s) || delta
  kPhiSensitive,     // phi(s)
  kPhiNonSensitive,  // phi(x) || delta
  kPredPlusPhi,      // f(x) || phi(x) || delta
  kPredOnly,         // f(x); prediction-only reference attack
};

// phi_all, phi_sensitive, phi_nonsensitive, pred_plus_phi, pred_only.
std::string_view to_string(AttackSurface surface);
AttackSurface parse_surface(std::string_view name);

bool valid_for(AttackSurface surface, ThreatModel tm);
bool needs_prediction(AttackSurface surface);
bool needs_explanation(AttackSurface surface);

// Encoded column indices of the explained model, split by attribute kind.
struct SurfaceLayout {
  std::vector<int> sensitive_columns;
  std::vector<int> nonsensitive_columns;

  int input_dim() const;
  int surface_dim(AttackSurface surface) const;
};

// Throws InvalidArgument for a surface that needs absent sensitive columns or
// a missing prediction, and DimensionMismatch if the attribution does not
// match the layout.
Eigen::VectorXd build_surface(const explain::Attribution* attribution, std::optional<double> prediction,
                              AttackSurface surface, const SurfaceLayout& layout);

// Row-wise build_surface. `attributions` may be empty for kPredOnly and
// `predictions` may be empty for surfaces that do not use them.
Eigen::MatrixXd build_surface_matrix(std::span<const explain::Attribution> attributions,
                                     std::span<const double> predictions, AttackSurface surface,
                                     const SurfaceLayout& layout);

}  // namespace attrinf::attack

#endif  // ATTRINF_ATTACK_SURFACE_H_
