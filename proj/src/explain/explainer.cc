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

#include "attrinf/explain/explainer.h"

#include <algorithm>
#include <random>
#include <thread>

#include "attrinf/common/error.h"
#include "attrinf/common/rng.h"

namespace attrinf::explain {

Explainer::Explainer(std::shared_ptr<const nn::MlpModel> model, Eigen::VectorXd baseline, ExplainerConfig cfg,
                     nn::ScalarTarget target, std::string baseline_id)
    : model_(std::move(model)),
      baseline_(std::move(baseline)),
      cfg_(cfg),
      target_(target),
      baseline_id_(std::move(baseline_id)) {
  if (!model_) throw InvalidArgument("explainer needs a model");
  if (baseline_.size() != model_->input_dim()) {
    throw DimensionMismatch("baseline length does not match the model input dimension");
  }
  if (!baseline_.allFinite()) throw InvalidArgument("baseline must be finite");
  cfg_.validate();
}

Attribution Explainer::explain(Algorithm algorithm, const Eigen::Ref<const Eigen::VectorXd>& x,
                               std::optional<std::uint64_t> record_id) const {
  ExplainerConfig cfg = cfg_;
  if (record_id) {
    cfg.seed = derive_seed(cfg_.seed, *record_id);
  } else {
    std::random_device entropy;
    cfg.seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
  }
  Attribution a;
  switch (algorithm) {
    case Algorithm::kIntegratedGradients:
      a = integrated_gradients(*model_, x, baseline_, cfg, target_);
      break;
    case Algorithm::kDeepLift:
      a = deeplift(*model_, x, baseline_, target_);
      break;
    case Algorithm::kGradientShap:
      a = gradient_shap(*model_, x, baseline_, cfg, target_);
      break;
    case Algorithm::kSmoothGrad:
      a = smoothgrad(*model_, x, baseline_, cfg, target_);
      break;
  }
  a.baseline_id = baseline_id_;
  return a;
}

std::vector<Attribution> Explainer::explain_batch(Algorithm algorithm, const Eigen::MatrixXd& xs,
                                                  std::span<const std::uint64_t> record_ids,
                                                  int threads) const {
  if (static_cast<std::size_t>(xs.rows()) != record_ids.size()) {
    throw DimensionMismatch("one record id per row is required");
  }
  if (xs.cols() != model_->input_dim()) throw DimensionMismatch("batch width does not match the model");
  const auto n = static_cast<std::size_t>(xs.rows());
  std::vector<Attribution> out(n);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(n, 1)));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      out[r] = explain(algorithm, xs.row(static_cast<Eigen::Index>(r)).transpose(), record_ids[r]);
    }
  };
  if (threads <= 1) {
    work(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double Explainer::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return model_->forward(x, nn::ScalarTarget::kPositiveProbability);
}

}  // namespace attrinf::explain
