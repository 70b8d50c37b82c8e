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

#include "attrinf/attack/surface.h"

#include <string>

#include "attrinf/common/error.h"

namespace attrinf::attack {

std::string_view to_string(ThreatModel tm) {
  return tm == ThreatModel::kWithSensitive ? "tm1" : "tm2";
}

ThreatModel parse_threat_model(std::string_view name) {
  if (name == "tm1") return ThreatModel::kWithSensitive;
  if (name == "tm2") return ThreatModel::kWithoutSensitive;
  throw InvalidArgument("unknown threat model '" + std::string(name) + "' (expected tm1 or tm2)");
}

std::string_view to_string(AttackSurface surface) {
  switch (surface) {
    case AttackSurface::kPhiAll:
      return "phi_all";
    case AttackSurface::kPhiSensitive:
      return "phi_sensitive";
    case AttackSurface::kPhiNonSensitive:
      return "phi_nonsensitive";
    case AttackSurface::kPredPlusPhi:
      return "pred_plus_phi";
    case AttackSurface::kPredOnly:
      return "pred_only";
  }
  return "unknown";
}

AttackSurface parse_surface(std::string_view name) {
  if (name == "phi_all") return AttackSurface::kPhiAll;
  if (name == "phi_sensitive") return AttackSurface::kPhiSensitive;
  if (name == "phi_nonsensitive") return AttackSurface::kPhiNonSensitive;
  if (name == "pred_plus_phi") return AttackSurface::kPredPlusPhi;
  if (name == "pred_only") return AttackSurface::kPredOnly;
  throw InvalidArgument("unknown attack surface '" + std::string(name) + "'");
}

bool valid_for(AttackSurface surface, ThreatModel tm) {
  if (surface == AttackSurface::kPhiAll || surface == AttackSurface::kPhiSensitive) {
    return tm == ThreatModel::kWithSensitive;
  }
  return true;
}

bool needs_prediction(AttackSurface surface) {
  return surface == AttackSurface::kPredPlusPhi || surface == AttackSurface::kPredOnly;
}

bool needs_explanation(AttackSurface surface) { return surface != AttackSurface::kPredOnly; }

int SurfaceLayout::input_dim() const {
  return static_cast<int>(sensitive_columns.size() + nonsensitive_columns.size());
}

int SurfaceLayout::surface_dim(AttackSurface surface) const {
  const int ns = static_cast<int>(nonsensitive_columns.size());
  switch (surface) {
    case AttackSurface::kPhiAll:
      return input_dim() + 1;
    case AttackSurface::kPhiSensitive:
      return static_cast<int>(sensitive_columns.size());
    case AttackSurface::kPhiNonSensitive:
      return ns + 1;
    case AttackSurface::kPredPlusPhi:
      return ns + 2;
    case AttackSurface::kPredOnly:
      return 1;
  }
  return 0;
}

Eigen::VectorXd build_surface(const explain::Attribution* attribution, std::optional<double> prediction,
                              AttackSurface surface, const SurfaceLayout& layout) {
  if ((surface == AttackSurface::kPhiAll || surface == AttackSurface::kPhiSensitive) &&
      layout.sensitive_columns.empty()) {
    throw InvalidArgument(std::string(to_string(surface)) +
                          " needs explanations of sensitive inputs, which this model does not have");
  }
  if (needs_prediction(surface) && !prediction) {
    throw InvalidArgument(std::string(to_string(surface)) + " needs the target model prediction");
  }
  if (needs_explanation(surface)) {
    if (!attribution) throw InvalidArgument(std::string(to_string(surface)) + " needs an attribution");
    if (attribution->scores.size() != layout.input_dim()) {
      throw DimensionMismatch("attribution width " + std::to_string(attribution->scores.size()) +
                              " does not match the layout width " + std::to_string(layout.input_dim()));
    }
  }
  Eigen::VectorXd v(layout.surface_dim(surface));
  Eigen::Index k = 0;
  switch (surface) {
    case AttackSurface::kPhiAll:
      v = explain::to_attack_vector(*attribution);
      return v;
    case AttackSurface::kPhiSensitive:
      return explain::restrict(*attribution, layout.sensitive_columns);
    case AttackSurface::kPredPlusPhi:
      v(k++) = *prediction;
      [[fallthrough]];
    case AttackSurface::kPhiNonSensitive: {
      const Eigen::VectorXd part = explain::restrict(*attribution, layout.nonsensitive_columns);
      v.segment(k, part.size()) = part;
      v(k + part.size()) = attribution->delta;
      return v;
    }
    case AttackSurface::kPredOnly:
      v(0) = *prediction;
      return v;
  }
  return v;
}

Eigen::MatrixXd build_surface_matrix(std::span<const explain::Attribution> attributions,
                                     std::span<const double> predictions, AttackSurface surface,
                                     const SurfaceLayout& layout) {
  const bool use_phi = needs_explanation(surface);
  const bool use_pred = needs_prediction(surface);
  const std::size_t n = use_phi ? attributions.size() : predictions.size();
  if (use_phi && use_pred && predictions.size() != attributions.size()) {
    throw DimensionMismatch("one prediction per attribution is required");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), layout.surface_dim(surface));
  for (std::size_t i = 0; i < n; ++i) {
    const explain::Attribution* a = use_phi ? &attributions[i] : nullptr;
    std::optional<double> p;
    if (use_pred) p = predictions[i];
    out.row(static_cast<Eigen::Index>(i)) = build_surface(a, p, surface, layout).transpose();
  }
  return out;
}

}  // namespace attrinf::attack
