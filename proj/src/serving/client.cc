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

#include "attrinf/serving/client.h"

#include <chrono>
#include <thread>

#include "attrinf/common/error.h"
#include "attrinf/serving/protocol.h"
#include "httplib.h"

namespace attrinf::serving {

MlaasClient::MlaasClient(const std::string& endpoint, ClientOptions options)
    : endpoint_(endpoint), options_(options) {
  if (options_.max_retries < 0) throw InvalidArgument("max_retries must be non-negative");
  client_ = std::make_unique<httplib::Client>(endpoint_);
  if (!client_->is_valid()) throw InvalidArgument("invalid endpoint: " + endpoint_);
  client_->set_keep_alive(true);
  client_->set_connection_timeout(options_.timeout_s, 0);
  client_->set_read_timeout(options_.timeout_s, 0);
  client_->set_write_timeout(options_.timeout_s, 0);
}

MlaasClient::~MlaasClient() = default;
MlaasClient::MlaasClient(MlaasClient&&) noexcept = default;
MlaasClient& MlaasClient::operator=(MlaasClient&&) noexcept = default;

std::string MlaasClient::post(const std::string& path, const std::string& body) {
  int backoff = options_.backoff_ms;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    auto res = client_->Post(path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "status " + std::to_string(res->status) + ": " + res->body;
      continue;
    }
    if (res->status != 200) {
      std::string message = res->body;
      const auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_object() && j.contains("error") && j["error"].is_string()) message = j["error"].get<std::string>();
      throw ProtocolError(endpoint_ + path + " answered " + std::to_string(res->status) + ": " + message);
    }
    return std::move(res->body);
  }
  throw TransportError(endpoint_ + path + " failed after " + std::to_string(options_.max_retries + 1) +
                       " attempts: " + last_error);
}

bool MlaasClient::healthy() {
  auto res = client_->Get("/v1/health");
  return res && res->status == 200;
}

double MlaasClient::predict(const Eigen::Ref<const Eigen::VectorXd>& x) {
  return parse_predict_response(post("/v1/predict", to_body(PredictRequest{x}))).probability;
}

explain::Attribution MlaasClient::explain(explain::Algorithm algorithm, const Eigen::Ref<const Eigen::VectorXd>& x,
                                          std::optional<std::uint64_t> record_id) {
  auto r = parse_explain_response(post("/v1/explain", to_body(ExplainRequest{x, algorithm, record_id})));
  if (r.scores.size() != x.size()) throw ProtocolError("explain response has the wrong number of scores");
  explain::Attribution a;
  a.algorithm = algorithm;
  a.scores = std::move(r.scores);
  a.delta = r.delta;
  a.baseline_id = "remote";
  return a;
}

std::vector<double> MlaasClient::predict_batch(const Eigen::MatrixXd& xs) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(xs.rows()));
  for (Eigen::Index r = 0; r < xs.rows(); ++r) out.push_back(predict(xs.row(r).transpose()));
  return out;
}

std::vector<explain::Attribution> MlaasClient::fetch_explanations(explain::Algorithm algorithm,
                                                                  const Eigen::MatrixXd& xs,
                                                                  std::span<const std::uint64_t> record_ids) {
  if (!record_ids.empty() && record_ids.size() != static_cast<std::size_t>(xs.rows())) {
    throw DimensionMismatch("record id count differs from row count");
  }
  std::vector<explain::Attribution> out;
  out.reserve(static_cast<std::size_t>(xs.rows()));
  for (Eigen::Index r = 0; r < xs.rows(); ++r) {
    std::optional<std::uint64_t> id;
    if (!record_ids.empty()) id = record_ids[static_cast<std::size_t>(r)];
    out.push_back(explain(algorithm, xs.row(r).transpose(), id));
  }
  return out;
}

}  // namespace attrinf::serving
