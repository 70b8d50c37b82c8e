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

#ifndef ATTRINF_SERVING_CLIENT_H_
#define ATTRINF_SERVING_CLIENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attrinf/explain/explainers.h"

namespace httplib {
class Client;
}

namespace attrinf::serving {

struct ClientOptions {
  // Extra attempts after the first for requests that fail at the transport
  // level or with a 5xx status. All endpoints are idempotent.
  int max_retries = 3;
  int backoff_ms = 50;  // doubled after each failed attempt
  int timeout_s = 30;
};

// Adversary-side client of the prediction service. Not thread-safe; use one
// instance per thread.
class MlaasClient {
 public:
  // `endpoint` is "http://host:port".
  explicit MlaasClient(const std::string& endpoint, ClientOptions options = {});
  ~MlaasClient();
  MlaasClient(MlaasClient&&) noexcept;
  MlaasClient& operator=(MlaasClient&&) noexcept;

  bool healthy();
  double predict(const Eigen::Ref<const Eigen::VectorXd>& x);
  explain::Attribution explain(explain::Algorithm algorithm, const Eigen::Ref<const Eigen::VectorXd>& x,
                               std::optional<std::uint64_t> record_id);

  // One call per row, results in row order. `record_ids` is empty or has
  // one id per row.
  std::vector<double> predict_batch(const Eigen::MatrixXd& xs);
  std::vector<explain::Attribution> fetch_explanations(explain::Algorithm algorithm, const Eigen::MatrixXd& xs,
                                                       std::span<const std::uint64_t> record_ids);

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string post(const std::string& path, const std::string& body);

  std::string endpoint_;
  ClientOptions options_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace attrinf::serving

#endif  // ATTRINF_SERVING_CLIENT_H_
