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

#include "attrinf/pipeline/config.h"

#include <algorithm>
#include <set>

#include "attrinf/common/error.h"
#include "attrinf/common/format.h"

namespace attrinf::pipeline {
namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "dataset",          "schema",
    "threat_models",    "explainers",
    "surfaces",         "surfaces.tm1",
    "surfaces.tm2",     "seed.split",
    "seed.model",       "seed.attack",
    "seed.explainer",   "target.hidden",
    "target.epochs",    "target.learning_rate",
    "target.batch_size", "attack.kind",
    "attack.hidden",    "attack.epochs",
    "attack.learning_rate", "attack.batch_size",
    "attack.standardize", "forest.trees",
    "forest.max_depth", "forest.min_leaf",
    "explainer.target", "explainer.ig_steps",
    "explainer.shap_samples", "explainer.shap_stdev",
    "explainer.smoothgrad_samples", "explainer.smoothgrad_sigma",
    "output_dir",       "transport",
    "threads",
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

template <typename T, typename Fn>
std::string join_names(const std::vector<T>& items, Fn&& name) {
  std::vector<std::string> s;
  for (const auto& i : items) s.emplace_back(name(i));
  return join(s);
}

std::string join_ints(const std::vector<int>& v) {
  return join_names(v, [](int i) { return std::to_string(i); });
}

std::vector<attack::AttackSurface> parse_surfaces(const std::vector<std::string>& names) {
  std::vector<attack::AttackSurface> out;
  for (const auto& n : names) out.push_back(attack::parse_surface(n));
  return out;
}

}  // namespace

std::string Transport::to_string() const {
  switch (kind) {
    case TransportKind::kInProcess:
      return "in_process";
    case TransportKind::kLoopback:
      return "loopback";
    case TransportKind::kRemote:
      return endpoint;
  }
  return "";
}

Transport Transport::parse(const std::string& text) {
  if (text == "in_process") return {};
  if (text == "loopback") return {TransportKind::kLoopback, ""};
  if (text.rfind("http://", 0) == 0 && text.size() > 7) return {TransportKind::kRemote, text};
  throw SchemaError("transport must be in_process, loopback or http://host:port, got " + text);
}

const std::vector<attack::AttackSurface>& ExperimentConfig::surfaces_for(attack::ThreatModel tm) const {
  static const std::vector<attack::AttackSurface> kNone;
  const auto it = surfaces.find(tm);
  return it == surfaces.end() ? kNone : it->second;
}

void ExperimentConfig::validate() const {
  if (dataset.empty() || schema.empty()) throw SchemaError("config needs dataset and schema");
  if (!std::filesystem::exists(dataset)) throw SchemaError("dataset not found: " + dataset.string());
  if (!std::filesystem::exists(schema)) throw SchemaError("schema not found: " + schema.string());
  if (threat_models.empty()) throw SchemaError("config lists no threat model");
  for (auto tm : threat_models) {
    if (std::count(threat_models.begin(), threat_models.end(), tm) > 1) {
      throw SchemaError("threat model listed twice: " + std::string(attack::to_string(tm)));
    }
    for (auto s : surfaces_for(tm)) {
      if (!attack::valid_for(s, tm)) {
        throw SchemaError("surface " + std::string(attack::to_string(s)) + " is not available under " +
                          std::string(attack::to_string(tm)));
      }
    }
  }
  const bool explains = std::any_of(threat_models.begin(), threat_models.end(), [&](auto tm) {
    const auto& ss = surfaces_for(tm);
    return ss.empty() || std::any_of(ss.begin(), ss.end(), attack::needs_explanation);
  });
  if (explains && explainers.empty()) throw SchemaError("config lists no explainer");
  if (transport.kind == TransportKind::kRemote && threat_models.size() != 1) {
    throw SchemaError("a remote endpoint serves one model; list exactly one threat model");
  }
  if (target_hidden.empty() || std::any_of(target_hidden.begin(), target_hidden.end(), [](int h) { return h < 1; })) {
    throw SchemaError("target.hidden must list positive layer widths");
  }
  if (threads < 0) throw SchemaError("threads must be non-negative");
  try {
    target_train.validate();
    attack.mlp_train.validate();
    attack.forest.validate();
    explainer.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> d;
  d.emplace_back("dataset", dataset.filename().string());
  d.emplace_back("schema", schema.filename().string());
  d.emplace_back("threat_models", join_names(threat_models, [](auto t) { return attack::to_string(t); }));
  d.emplace_back("explainers", join_names(explainers, [](auto a) { return explain::to_string(a); }));
  for (auto tm : threat_models) {
    d.emplace_back("surfaces." + std::string(attack::to_string(tm)),
                   join_names(surfaces_for(tm), [](auto s) { return attack::to_string(s); }));
  }
  d.emplace_back("seed.split", std::to_string(seeds.split));
  d.emplace_back("seed.model", std::to_string(seeds.model));
  d.emplace_back("seed.attack", std::to_string(seeds.attack));
  d.emplace_back("seed.explainer", std::to_string(seeds.explainer));
  d.emplace_back("target.hidden", join_ints(target_hidden));
  d.emplace_back("target.epochs", std::to_string(target_train.epochs));
  d.emplace_back("target.learning_rate", format_double(target_train.learning_rate));
  d.emplace_back("target.batch_size", std::to_string(target_train.batch_size));
  d.emplace_back("attack.kind", std::string(attack::to_string(attack.kind)));
  d.emplace_back("attack.hidden", join_ints(attack.mlp_hidden));
  d.emplace_back("attack.epochs", std::to_string(attack.mlp_train.epochs));
  d.emplace_back("attack.learning_rate", format_double(attack.mlp_train.learning_rate));
  d.emplace_back("attack.batch_size", std::to_string(attack.mlp_train.batch_size));
  d.emplace_back("attack.standardize", attack.standardize ? "true" : "false");
  d.emplace_back("forest.trees", std::to_string(attack.forest.n_trees));
  d.emplace_back("forest.max_depth", std::to_string(attack.forest.max_depth));
  d.emplace_back("forest.min_leaf", std::to_string(attack.forest.min_leaf));
  d.emplace_back("explainer.target", std::string(nn::to_string(explain_target)));
  d.emplace_back("explainer.ig_steps", std::to_string(explainer.ig_steps));
  d.emplace_back("explainer.shap_samples", std::to_string(explainer.shap_samples));
  d.emplace_back("explainer.shap_stdev", format_double(explainer.shap_stdev));
  d.emplace_back("explainer.smoothgrad_samples", std::to_string(explainer.smoothgrad_samples));
  d.emplace_back("explainer.smoothgrad_sigma", format_double(explainer.smoothgrad_sigma));
  d.emplace_back("transport", transport.to_string());
  return d;
}

ExperimentConfig ExperimentConfig::from_kv(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
  for (const auto& [key, value] : kv.entries()) {
    if (!kKnownKeys.contains(key)) throw SchemaError(kv.origin() + ": unknown key " + key);
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  ExperimentConfig c;
  try {
    c.dataset = resolve(kv.get("dataset"));
    c.schema = resolve(kv.get("schema"));
    if (kv.has("threat_models")) {
      c.threat_models.clear();
      for (const auto& n : kv.get_list("threat_models")) c.threat_models.push_back(attack::parse_threat_model(n));
    }
    if (kv.has("explainers")) {
      c.explainers.clear();
      for (const auto& n : kv.get_list("explainers")) c.explainers.push_back(explain::parse_algorithm(n));
    }
    for (auto tm : c.threat_models) {
      const std::string key = "surfaces." + std::string(attack::to_string(tm));
      if (kv.has(key)) {
        c.surfaces[tm] = parse_surfaces(kv.get_list(key));
      } else if (kv.has("surfaces")) {
        c.surfaces[tm] = parse_surfaces(kv.get_list("surfaces"));
      } else {
        c.surfaces[tm] = {tm == attack::ThreatModel::kWithSensitive ? attack::AttackSurface::kPhiAll
                                                                    : attack::AttackSurface::kPhiNonSensitive};
      }
    }
    c.seeds.split = kv.get_uint("seed.split", 0);
    c.seeds.model = kv.get_uint("seed.model", 0);
    c.seeds.attack = kv.get_uint("seed.attack", 0);
    c.seeds.explainer = kv.get_uint("seed.explainer", 0);

    c.target_hidden = kv.get_int_list("target.hidden", c.target_hidden);
    c.target_train.epochs = static_cast<int>(kv.get_int("target.epochs", c.target_train.epochs));
    c.target_train.learning_rate = kv.get_double("target.learning_rate", c.target_train.learning_rate);
    c.target_train.batch_size = static_cast<int>(kv.get_int("target.batch_size", c.target_train.batch_size));

    c.attack.kind = attack::parse_attack_kind(kv.get_or("attack.kind", "mlp"));
    c.attack.mlp_hidden = kv.get_int_list("attack.hidden", c.attack.mlp_hidden);
    c.attack.mlp_train.epochs = static_cast<int>(kv.get_int("attack.epochs", c.attack.mlp_train.epochs));
    c.attack.mlp_train.learning_rate = kv.get_double("attack.learning_rate", c.attack.mlp_train.learning_rate);
    c.attack.mlp_train.batch_size =
        static_cast<int>(kv.get_int("attack.batch_size", c.attack.mlp_train.batch_size));
    c.attack.standardize = kv.get_bool("attack.standardize", c.attack.standardize);
    c.attack.forest.n_trees = static_cast<int>(kv.get_int("forest.trees", c.attack.forest.n_trees));
    c.attack.forest.max_depth = static_cast<int>(kv.get_int("forest.max_depth", c.attack.forest.max_depth));
    c.attack.forest.min_leaf = static_cast<int>(kv.get_int("forest.min_leaf", c.attack.forest.min_leaf));

    c.explain_target = nn::parse_scalar_target(kv.get_or("explainer.target", "logit"));
    c.explainer.ig_steps = static_cast<int>(kv.get_int("explainer.ig_steps", c.explainer.ig_steps));
    c.explainer.shap_samples = static_cast<int>(kv.get_int("explainer.shap_samples", c.explainer.shap_samples));
    c.explainer.shap_stdev = kv.get_double("explainer.shap_stdev", c.explainer.shap_stdev);
    c.explainer.smoothgrad_samples =
        static_cast<int>(kv.get_int("explainer.smoothgrad_samples", c.explainer.smoothgrad_samples));
    c.explainer.smoothgrad_sigma = kv.get_double("explainer.smoothgrad_sigma", c.explainer.smoothgrad_sigma);
    c.explainer.seed = c.seeds.explainer;

    c.output_dir = kv.get_or("output_dir", c.output_dir.string());
    c.transport = Transport::parse(kv.get_or("transport", "in_process"));
    c.threads = static_cast<int>(kv.get_int("threads", c.threads));
  } catch (const InvalidArgument& e) {
    throw SchemaError(kv.origin() + ": " + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_kv(KeyValueFile::load(path), path.parent_path());
}

}  // namespace attrinf::pipeline
