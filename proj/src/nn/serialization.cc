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

#include "attrinf/nn/serialization.h"

#include <fstream>

#include "attrinf/common/error.h"

namespace attrinf::nn {

namespace {

constexpr const char* kFormat = "attrinf.mlp";
constexpr int kVersion = 1;

}  // namespace

nlohmann::json train_config_to_json(const TrainConfig& cfg) {
  return {{"epochs", cfg.epochs},           {"learning_rate", cfg.learning_rate},
          {"batch_size", cfg.batch_size},   {"adam_beta1", cfg.adam_beta1},
          {"adam_beta2", cfg.adam_beta2},   {"adam_epsilon", cfg.adam_epsilon},
          {"seed", cfg.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig cfg;
  cfg.epochs = j.at("epochs").get<int>();
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.batch_size = j.at("batch_size").get<int>();
  cfg.adam_beta1 = j.at("adam_beta1").get<double>();
  cfg.adam_beta2 = j.at("adam_beta2").get<double>();
  cfg.adam_epsilon = j.at("adam_epsilon").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

nlohmann::json model_to_json(const MlpModel& model) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (int l = 0; l < model.num_layers(); ++l) {
    const auto& w = model.weights()[l];
    // Row-major flattening.
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    }
    weights.push_back(std::move(flat));
    const auto& b = model.biases()[l];
    biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
  }
  nlohmann::json j = {{"format", kFormat},
                      {"version", kVersion},
                      {"layer_dims", model.layer_dims()},
                      {"seed", model.seed()},
                      {"weights", std::move(weights)},
                      {"biases", std::move(biases)}};
  j["train_config"] = model.train_config() ? train_config_to_json(*model.train_config()) : nlohmann::json();
  return j;
}

MlpModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ProtocolError("not an attrinf MLP file");
    if (j.at("version").get<int>() != kVersion) throw ProtocolError("unsupported MLP file version");
    auto dims = j.at("layer_dims").get<std::vector<int>>();
    const auto& wj = j.at("weights");
    const auto& bj = j.at("biases");
    if (dims.size() < 2 || wj.size() != dims.size() - 1 || bj.size() != dims.size() - 1) {
      throw ProtocolError("layer count mismatch in MLP file");
    }
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
      const auto flat = wj[l].get<std::vector<double>>();
      if (flat.size() != static_cast<std::size_t>(dims[l]) * static_cast<std::size_t>(dims[l + 1])) {
        throw ProtocolError("weight tensor size mismatch in MLP file");
      }
      Eigen::MatrixXd w(dims[l + 1], dims[l]);
      std::size_t k = 0;
      for (int r = 0; r < dims[l + 1]; ++r) {
        for (int c = 0; c < dims[l]; ++c) w(r, c) = flat[k++];
      }
      weights.push_back(std::move(w));
      const auto b = bj[l].get<std::vector<double>>();
      biases.push_back(Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())));
    }
    MlpModel model(std::move(dims), std::move(weights), std::move(biases), j.at("seed").get<std::uint64_t>());
    if (!j.at("train_config").is_null()) {
      model = with_train_config(std::move(model), train_config_from_json(j.at("train_config")));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed MLP file: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model).dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError("cannot parse " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace attrinf::nn
