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

#include "attrinf/attack/attack_model.h"

#include <fstream>

#include "attrinf/common/error.h"
#include "attrinf/common/rng.h"
#include "attrinf/nn/serialization.h"
#include "attrinf/nn/train.h"

namespace attrinf::attack {

std::string_view to_string(AttackKind kind) {
  return kind == AttackKind::kMlp ? "mlp" : "forest";
}

AttackKind parse_attack_kind(std::string_view name) {
  if (name == "mlp") return AttackKind::kMlp;
  if (name == "forest" || name == "random_forest") return AttackKind::kRandomForest;
  throw InvalidArgument("unknown attack kind: " + std::string(name));
}

Standardizer Standardizer::identity(int dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& features) {
  if (features.rows() == 0) throw InvalidArgument("cannot standardize an empty matrix");
  Standardizer s;
  s.mean = features.colwise().mean().transpose();
  const Eigen::MatrixXd centered = features.rowwise() - s.mean.transpose();
  s.scale = (centered.array().square().colwise().sum() / static_cast<double>(features.rows())).sqrt().transpose();
  for (Eigen::Index i = 0; i < s.scale.size(); ++i) {
    if (!(s.scale(i) > 0.0)) s.scale(i) = 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& xs) const {
  if (xs.cols() != mean.size()) throw DimensionMismatch("standardizer input has the wrong width");
  return (xs.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

AttackModel::AttackModel(nn::MlpModel mlp, Standardizer standardizer)
    : impl_(MlpPart{std::move(mlp), std::move(standardizer)}) {
  const auto& part = std::get<MlpPart>(impl_);
  if (part.standardizer.mean.size() != part.model.input_dim() ||
      part.standardizer.scale.size() != part.model.input_dim()) {
    throw DimensionMismatch("standardizer width differs from attack model input");
  }
}

AttackModel::AttackModel(RandomForest forest) : impl_(std::move(forest)) {}

AttackModel AttackModel::train(const Eigen::MatrixXd& features, std::span<const int> s_labels,
                               const AttackTrainConfig& cfg, std::uint64_t seed) {
  if (features.rows() != static_cast<Eigen::Index>(s_labels.size())) {
    throw DimensionMismatch("attack features and labels differ in length");
  }
  if (features.cols() == 0) throw DimensionMismatch("attack surface is empty");
  bool has0 = false, has1 = false;
  for (int s : s_labels) {
    if (s != 0 && s != 1) throw InvalidArgument("attack labels must be 0 or 1");
    (s == 1 ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw InvalidArgument("attack training data must contain both classes");

  if (cfg.kind == AttackKind::kRandomForest) {
    return AttackModel(RandomForest::fit(features, s_labels, cfg.forest, seed));
  }
  Standardizer standardizer = cfg.standardize ? Standardizer::fit(features)
                                              : Standardizer::identity(static_cast<int>(features.cols()));
  std::vector<int> dims;
  dims.push_back(static_cast<int>(features.cols()));
  dims.insert(dims.end(), cfg.mlp_hidden.begin(), cfg.mlp_hidden.end());
  dims.push_back(1);
  nn::TrainConfig tc = cfg.mlp_train;
  tc.seed = derive_seed(seed, 1);
  auto model = nn::train(nn::MlpModel::init(dims, derive_seed(seed, 0)), standardizer.apply(features), s_labels, tc);
  return AttackModel(std::move(model), std::move(standardizer));
}

AttackKind AttackModel::kind() const {
  return std::holds_alternative<MlpPart>(impl_) ? AttackKind::kMlp : AttackKind::kRandomForest;
}

int AttackModel::input_dim() const {
  if (const auto* p = std::get_if<MlpPart>(&impl_)) return p->model.input_dim();
  return std::get<RandomForest>(impl_).input_dim();
}

Eigen::VectorXd AttackModel::score(const Eigen::MatrixXd& features) const {
  if (features.cols() != input_dim()) throw DimensionMismatch("attack input has the wrong width");
  if (const auto* p = std::get_if<MlpPart>(&impl_)) {
    return p->model.forward_batch(p->standardizer.apply(features), nn::ScalarTarget::kPositiveProbability);
  }
  return std::get<RandomForest>(impl_).score_batch(features);
}

const nn::MlpModel* AttackModel::mlp() const {
  const auto* p = std::get_if<MlpPart>(&impl_);
  return p ? &p->model : nullptr;
}

const RandomForest* AttackModel::forest() const { return std::get_if<RandomForest>(&impl_); }

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json AttackModel::to_json() const {
  nlohmann::json j = {{"format", "attrinf.attack"}, {"version", 1}, {"kind", to_string(kind())}};
  if (const auto* p = std::get_if<MlpPart>(&impl_)) {
    j["model"] = nn::model_to_json(p->model);
    j["standardizer"] = {{"mean", to_vec(p->standardizer.mean)}, {"scale", to_vec(p->standardizer.scale)}};
  } else {
    j["forest"] = std::get<RandomForest>(impl_).to_json();
  }
  return j;
}

AttackModel AttackModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "attrinf.attack" || j.at("version") != 1) {
      throw ProtocolError("not an attrinf attack model");
    }
    if (parse_attack_kind(j.at("kind").get<std::string>()) == AttackKind::kRandomForest) {
      return AttackModel(RandomForest::from_json(j.at("forest")));
    }
    const auto& sj = j.at("standardizer");
    Standardizer st{from_vec(sj.at("mean").get<std::vector<double>>()),
                    from_vec(sj.at("scale").get<std::vector<double>>())};
    return AttackModel(nn::model_from_json(j.at("model")), std::move(st));
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed attack model: ") + e.what());
  }
}

void AttackModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json().dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

AttackModel AttackModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace attrinf::attack
