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

#ifndef ATTRINF_NN_SERIALIZATION_H_
#define ATTRINF_NN_SERIALIZATION_H_

#include <filesystem>

#include "attrinf/nn/mlp.h"
#include "json.hpp"

namespace attrinf::nn {

// JSON container: {"format": "attrinf.mlp", "version": 1, "layer_dims",
// "seed", "train_config", "weights", "biases"}. Doubles are written in
// shortest round-trip form so parameters reload bit-exactly.
nlohmann::json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::json& j);

nlohmann::json train_config_to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& j);

void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace attrinf::nn

#endif  // ATTRINF_NN_SERIALIZATION_H_
