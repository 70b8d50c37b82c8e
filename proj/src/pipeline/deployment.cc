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

#include "attrinf/pipeline/deployment.h"

#include <fstream>

#include "attrinf/common/error.h"
#include "json.hpp"

namespace attrinf::pipeline {

void save_deployment(const Deployment& d, const std::filesystem::path& path) {
  const std::vector<double> baseline(d.baseline.data(), d.baseline.data() + d.baseline.size());
  const nlohmann::ordered_json j = {{"format", "attrinf.deployment"},
                                    {"version", 1},
                                    {"baseline", baseline},
                                    {"target", nn::to_string(d.target)},
                                    {"ig_steps", d.explainer.ig_steps},
                                    {"shap_samples", d.explainer.shap_samples},
                                    {"shap_stdev", d.explainer.shap_stdev},
                                    {"smoothgrad_samples", d.explainer.smoothgrad_samples},
                                    {"smoothgrad_sigma", d.explainer.smoothgrad_sigma},
                                    {"seed", d.explainer.seed}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Deployment load_deployment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("format") != "attrinf.deployment" || j.at("version") != 1) {
      throw ProtocolError(path.string() + " is not a deployment file");
    }
    Deployment d;
    const auto b = j.at("baseline").get<std::vector<double>>();
    d.baseline = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    d.target = nn::parse_scalar_target(j.at("target").get<std::string>());
    d.explainer.ig_steps = j.at("ig_steps").get<int>();
    d.explainer.shap_samples = j.at("shap_samples").get<int>();
    d.explainer.shap_stdev = j.at("shap_stdev").get<double>();
    d.explainer.smoothgrad_samples = j.at("smoothgrad_samples").get<int>();
    d.explainer.smoothgrad_sigma = j.at("smoothgrad_sigma").get<double>();
    d.explainer.seed = j.at("seed").get<std::uint64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(path.string() + ": " + e.what());
  }
}

}  // namespace attrinf::pipeline
