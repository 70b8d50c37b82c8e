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

// Command line front end: train, explain, attack, audit, serve, experiment.

#include <pthread.h>

#include <csignal>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "attrinf/attack/calibration.h"
#include "attrinf/attack/surface.h"
#include "attrinf/common/format.h"
#include "attrinf/data/schema.h"
#include "attrinf/data/table.h"
#include "attrinf/explain/attribution_io.h"
#include "attrinf/metrics/metrics.h"
#include "attrinf/nn/serialization.h"
#include "attrinf/nn/train.h"
#include "attrinf/pipeline/deployment.h"
#include "attrinf/pipeline/experiment.h"
#include "attrinf/serving/server.h"

namespace {

using namespace attrinf;

struct ConfigArgs {
  std::string config;
  std::string out;
  std::string transport;
  std::optional<std::uint64_t> seed_split, seed_model, seed_attack, seed_explainer;
  int threads = -1;

  void add_to(CLI::App* app) {
    app->add_option("-c,--config", config, "experiment config file")->required()->check(CLI::ExistingFile);
    app->add_option("--transport", transport, "in_process | loopback | http://host:port");
    app->add_option("--seed-split", seed_split);
    app->add_option("--seed-model", seed_model);
    app->add_option("--seed-attack", seed_attack);
    app->add_option("--seed-explainer", seed_explainer);
    app->add_option("--threads", threads, "explanation threads, 0 = all cores");
  }

  pipeline::ExperimentConfig load() const {
    auto cfg = pipeline::ExperimentConfig::load(config);
    if (!out.empty()) cfg.output_dir = out;
    if (!transport.empty()) cfg.transport = pipeline::Transport::parse(transport);
    if (seed_split) cfg.seeds.split = *seed_split;
    if (seed_model) cfg.seeds.model = *seed_model;
    if (seed_attack) cfg.seeds.attack = *seed_attack;
    if (seed_explainer) cfg.seeds.explainer = *seed_explainer;
    cfg.explainer.seed = cfg.seeds.explainer;
    if (threads >= 0) cfg.threads = threads;
    return cfg;
  }
};

const data::TabularDataset& pick_split(const data::DatasetSplits& s, const std::string& name) {
  if (name == "target_train") return s.target_train;
  if (name == "test") return s.test;
  if (name == "aux") return s.aux;
  if (name == "eval") return s.eval;
  throw InvalidArgument("unknown split " + name + " (target_train, test, aux, eval)");
}

data::DatasetSplits load_splits(const pipeline::ExperimentConfig& cfg, attack::ThreatModel tm) {
  const auto schema = data::TabularSchema::load(cfg.schema);
  const auto raw = data::load_csv(cfg.dataset, schema);
  return data::prepare_splits(raw, schema, tm == attack::ThreatModel::kWithSensitive, cfg.seeds.split);
}

int cmd_experiment(const ConfigArgs& args, bool quiet) {
  const auto cfg = args.load();
  pipeline::RunOptions options;
  options.log = quiet ? nullptr : &std::cerr;
  const auto report = pipeline::run_experiment(cfg, options);
  pipeline::emit_report(report, cfg.output_dir);
  std::cout << "threat_model,explainer,surface,precision,recall,f1,all_positive_f1\n";
  for (const auto& r : report.rows) {
    std::cout << r.threat_model << ',' << r.explainer << ',' << r.surface << ',' << format_double(r.precision)
              << ',' << format_double(r.recall) << ',' << format_double(r.f1) << ','
              << format_double(r.all_positive_f1) << '\n';
  }
  std::cerr << "report written to " << cfg.output_dir.string() << '\n';
  return 0;
}

int cmd_audit(const ConfigArgs& args, bool quiet) {
  const auto cfg = args.load();
  pipeline::AttackReport report;
  report.correlations = pipeline::run_correlation_audit(cfg, quiet ? nullptr : &std::cerr);
  report.manifest = cfg.describe();
  pipeline::emit_report(report, cfg.output_dir);
  std::cout << "threat_model,explainer,quantity,mean,stdev,mean_abs,columns\n";
  for (const auto& r : report.correlations) {
    std::cout << r.threat_model << ',' << r.explainer << ',' << r.quantity << ',' << format_double(r.mean) << ','
              << format_double(r.stdev) << ',' << format_double(r.mean_abs) << ',' << r.columns << '\n';
  }
  return 0;
}

int cmd_train(const ConfigArgs& args, const std::string& tm_name) {
  const auto cfg = args.load();
  const auto tm = attack::parse_threat_model(tm_name);
  const auto splits = load_splits(cfg, tm);
  const auto target = pipeline::train_target(splits, cfg);
  std::filesystem::create_directories(cfg.output_dir);
  nn::save_model(*target.model, cfg.output_dir / "target_model.json");
  pipeline::save_deployment({target.baseline, cfg.explainer, cfg.explain_target}, cfg.output_dir / "deployment.json");
  std::cout << "test_accuracy," << format_double(nn::evaluate_accuracy(*target.model, splits.test.features,
                                                                       splits.test.labels))
            << '\n';
  return 0;
}

std::unique_ptr<pipeline::QuerySource> open_source(const pipeline::ExperimentConfig& cfg, const std::string& model,
                                                   const std::string& deployment) {
  if (cfg.transport.kind == pipeline::TransportKind::kRemote) {
    return std::make_unique<pipeline::RemoteSource>(cfg.transport.endpoint);
  }
  if (model.empty() || deployment.empty()) {
    throw InvalidArgument("--model and --deployment are required unless the transport is a remote endpoint");
  }
  const auto d = pipeline::load_deployment(deployment);
  auto explainer = std::make_shared<const explain::Explainer>(
      std::make_shared<const nn::MlpModel>(nn::load_model(model)), d.baseline, d.explainer, d.target);
  return std::make_unique<pipeline::InProcessSource>(explainer, cfg.threads);
}

int cmd_explain(const ConfigArgs& args, const std::string& tm_name, const std::string& split_name,
                const std::string& algorithm, const std::string& model, const std::string& deployment,
                const std::string& out) {
  const auto cfg = args.load();
  const auto splits = load_splits(cfg, attack::parse_threat_model(tm_name));
  const auto& ds = pick_split(splits, split_name);
  auto source = open_source(cfg, model, deployment);
  const auto attributions = source->explain(explain::parse_algorithm(algorithm), ds.features, ds.record_ids);
  std::vector<explain::ExplanationRecord> records;
  for (std::size_t i = 0; i < attributions.size(); ++i) records.push_back({ds.record_ids[i], attributions[i]});
  explain::write_explanations(out, records);
  std::cerr << "wrote " << records.size() << " explanations to " << out << '\n';
  return 0;
}

// Rows of `records` reordered to follow `ds`; every dataset row must appear.
std::vector<explain::Attribution> align(const std::vector<explain::ExplanationRecord>& records,
                                        const data::TabularDataset& ds, const std::string& what) {
  std::map<std::uint64_t, const explain::Attribution*> by_id;
  for (const auto& r : records) by_id[r.record_id] = &r.attribution;
  std::vector<explain::Attribution> out;
  for (auto id : ds.record_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw InvalidArgument(what + " lacks record " + std::to_string(id));
    out.push_back(*it->second);
  }
  return out;
}

int cmd_attack(const ConfigArgs& args, const std::string& tm_name, const std::string& surface_name,
               const std::string& aux_file, const std::string& eval_file) {
  const auto cfg = args.load();
  const auto tm = attack::parse_threat_model(tm_name);
  const auto surface = attack::parse_surface(surface_name);
  if (!attack::valid_for(surface, tm) || !attack::needs_explanation(surface) || attack::needs_prediction(surface)) {
    throw InvalidArgument("surface " + surface_name + " cannot be built from explanation files under " + tm_name);
  }
  const auto schema = data::TabularSchema::load(cfg.schema);
  const auto splits = data::prepare_splits(data::load_csv(cfg.dataset, schema), schema,
                                           tm == attack::ThreatModel::kWithSensitive, cfg.seeds.split);
  const auto aux_attr = align(explain::read_explanations(aux_file), splits.aux, aux_file);
  const auto eval_attr = align(explain::read_explanations(eval_file), splits.eval, eval_file);
  const attack::SurfaceLayout layout{splits.eval.sensitive_columns(), splits.eval.nonsensitive_columns()};
  const auto aux_x = attack::build_surface_matrix(aux_attr, {}, surface, layout);
  const auto eval_x = attack::build_surface_matrix(eval_attr, {}, surface, layout);
  auto cell = pipeline::run_attack_cell(aux_x, splits.aux.sensitive, eval_x, splits.eval.sensitive,
                                        splits.eval.record_ids, cfg.attack, cfg.seeds.attack);

  pipeline::AttackRow row;
  row.dataset = schema.name;
  row.sensitive = schema.sensitive_column;
  row.threat_model = tm_name;
  row.explainer = std::string(explain::to_string(eval_attr.empty() ? explain::Algorithm::kIntegratedGradients
                                                                   : eval_attr.front().algorithm));
  row.surface = surface_name;
  row.attack_kind = std::string(attack::to_string(cfg.attack.kind));
  row.tau_star = cell.tau_star;
  row.aux_f1 = cell.aux_f1;
  row.counts = cell.counts;
  row.precision = metrics::precision(cell.counts);
  row.recall = metrics::recall(cell.counts);
  row.f1 = metrics::f1(cell.counts);
  row.base_rate = data::sensitive_base_rate(splits.eval);
  row.all_positive_f1 = metrics::all_positive_f1(row.base_rate);
  pipeline::AttackReport report;
  report.manifest = cfg.describe();
  report.curves[row.cell_id()] = std::move(cell.eval_curve);
  report.predictions[row.cell_id()] = std::move(cell.dump);
  report.rows.push_back(row);
  pipeline::emit_report(report, cfg.output_dir);
  std::cout << "precision," << format_double(row.precision) << "\nrecall," << format_double(row.recall) << "\nf1,"
            << format_double(row.f1) << '\n';
  return 0;
}

int cmd_serve(const std::string& model, const std::string& deployment, const std::string& bind) {
  const auto d = pipeline::load_deployment(deployment);
  auto explainer = std::make_shared<const explain::Explainer>(
      std::make_shared<const nn::MlpModel>(nn::load_model(model)), d.baseline, d.explainer, d.target);
  serving::HttpServer server(std::make_shared<serving::ExplanationService>(explainer),
                             serving::BindAddress::parse(bind));
  // Block the stop signals before the server threads exist so that only
  // sigwait below receives them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
  server.start();
  std::cerr << "serving on " << server.url() << '\n';
  int received = 0;
  sigwait(&stop_signals, &received);
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attribute inference from model explanations"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  ConfigArgs exp_args, audit_args, train_args, explain_args, attack_args;
  std::string tm = "tm1", split = "eval", algorithm = "integrated_gradients", surface = "phi_all";
  std::string model, deployment, out_file, aux_file, eval_file, bind = "127.0.0.1:8080";

  auto* experiment = app.add_subcommand("experiment", "run the full experiment matrix and write the report");
  exp_args.add_to(experiment);
  experiment->add_option("-o,--out", exp_args.out, "output directory");

  auto* audit = app.add_subcommand("audit", "correlation audit of s against y, x and explanations");
  audit_args.add_to(audit);
  audit->add_option("-o,--out", audit_args.out, "output directory");

  auto* train = app.add_subcommand("train", "train the target model and write it with its deployment file");
  train_args.add_to(train);
  train->add_option("-o,--out", train_args.out, "output directory");
  train->add_option("--threat-model", tm, "tm1 | tm2");

  auto* explain = app.add_subcommand("explain", "explain one split and write an explanation CSV");
  explain_args.add_to(explain);
  explain->add_option("--threat-model", tm, "tm1 | tm2");
  explain->add_option("--split", split, "target_train | test | aux | eval");
  explain->add_option("--algorithm", algorithm);
  explain->add_option("--model", model, "target model JSON (in-process)");
  explain->add_option("--deployment", deployment, "deployment JSON (in-process)");
  explain->add_option("-o,--out", out_file, "explanation CSV")->required();

  auto* attack_cmd = app.add_subcommand("attack", "train and evaluate an attack from explanation CSVs");
  attack_args.add_to(attack_cmd);
  attack_cmd->add_option("-o,--out", attack_args.out, "output directory");
  attack_cmd->add_option("--threat-model", tm, "tm1 | tm2");
  attack_cmd->add_option("--surface", surface);
  attack_cmd->add_option("--aux", aux_file, "explanations of the aux split")->required()->check(CLI::ExistingFile);
  attack_cmd->add_option("--eval", eval_file, "explanations of the eval split")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "serve predict and explain endpoints over HTTP");
  serve->add_option("--model", model)->required()->check(CLI::ExistingFile);
  serve->add_option("--deployment", deployment)->required()->check(CLI::ExistingFile);
  serve->add_option("--bind", bind, "host:port");

  CLI11_PARSE(app, argc, argv);

  std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (*experiment) return cmd_experiment(exp_args, quiet);
    if (*audit) return cmd_audit(audit_args, quiet);
    if (*train) return cmd_train(train_args, tm);
    if (*explain) return cmd_explain(explain_args, tm, split, algorithm, model, deployment, out_file);
    if (*attack_cmd) return cmd_attack(attack_args, tm, surface, aux_file, eval_file);
    if (*serve) return cmd_serve(model, deployment, bind);
  } catch (const pipeline::PipelineError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [" << stage << "]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
