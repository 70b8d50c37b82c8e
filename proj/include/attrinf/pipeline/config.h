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

#ifndef ATTRINF_PIPELINE_CONFIG_H_
#define ATTRINF_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "attrinf/attack/attack_model.h"
#include "attrinf/attack/surface.h"
#include "attrinf/common/kv_file.h"
#include "attrinf/explain/explainers.h"
#include "attrinf/nn/mlp.h"

namespace attrinf::pipeline {

// in_process: explanations come straight from the locally trained model.
// loopback: the locally trained model is served on 127.0.0.1 and every
//   prediction and explanation goes through the HTTP client.
// remote: an already running service at `endpoint` answers all queries; no
//   target model is trained locally.
enum class TransportKind { kInProcess, kLoopback, kRemote };

struct Transport {
  TransportKind kind = TransportKind::kInProcess;
  std::string endpoint;  // remote only

  std::string to_string() const;
  static Transport parse(const std::string& text);
};

struct Seeds {
  std::uint64_t split = 0;
  std::uint64_t model = 0;
  std::uint64_t attack = 0;
  std::uint64_t explainer = 0;
};

// One experiment matrix. Threat models and explainers are crossed; every
// threat model runs its own surface list.
//
// Config file keys (flat key = value; relative input paths resolve against
// the config file's directory):
//   dataset, schema                    CSV and schema paths (required)
//   threat_models                      tm1, tm2
//   explainers                         integrated_gradients, deeplift, ...
//   surfaces                           default surface list
//   surfaces.tm1, surfaces.tm2         per threat model override
//   seed.split, seed.model, seed.attack, seed.explainer
//   target.hidden, target.epochs, target.learning_rate, target.batch_size
//   attack.kind (mlp | forest), attack.hidden, attack.epochs,
//   attack.learning_rate, attack.batch_size, attack.standardize
//   forest.trees, forest.max_depth, forest.min_leaf
//   explainer.target (logit | probability), explainer.ig_steps,
//   explainer.shap_samples, explainer.shap_stdev,
//   explainer.smoothgrad_samples, explainer.smoothgrad_sigma
//   output_dir, transport (in_process | loopback | http://host:port), threads
struct ExperimentConfig {
  std::filesystem::path dataset;
  std::filesystem::path schema;
  std::vector<attack::ThreatModel> threat_models = {attack::ThreatModel::kWithSensitive};
  std::vector<explain::Algorithm> explainers = {explain::Algorithm::kIntegratedGradients};
  std::map<attack::ThreatModel, std::vector<attack::AttackSurface>> surfaces;
  Seeds seeds;
  std::vector<int> target_hidden = {1024, 512, 256, 128};
  nn::TrainConfig target_train;
  attack::AttackTrainConfig attack;
  explain::ExplainerConfig explainer;
  nn::ScalarTarget explain_target = nn::ScalarTarget::kPositiveLogit;
  std::filesystem::path output_dir = "attrinf_out";
  Transport transport;
  int threads = 1;

  const std::vector<attack::AttackSurface>& surfaces_for(attack::ThreatModel tm) const;

  // Throws SchemaError for a surface that is invalid under its threat model,
  // a remote transport with more than one threat model, or missing files.
  void validate() const;

  // Resolved settings as key/value pairs, in a fixed order.
  std::vector<std::pair<std::string, std::string>> describe() const;

  static ExperimentConfig from_kv(const KeyValueFile& kv, const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

}  // namespace attrinf::pipeline

#endif  // ATTRINF_PIPELINE_CONFIG_H_
