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

#ifndef ATTRINF_SERVING_PROTOCOL_H_
#define ATTRINF_SERVING_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "attrinf/common/error.h"
#include "attrinf/explain/explainers.h"
#include "json.hpp"

// Wire format of the prediction service. All bodies are JSON objects.
//
//   POST /v1/predict  {"features": [x...]}
//                  -> {"probability": p}
//   POST /v1/explain  {"features": [x...], "algorithm": name, "record_id": n?}
//                  -> {"scores": [phi...], "delta": d}
//   GET  /v1/health -> {"status": "ok"}
//
// Failures answer {"error": message}: 400 for malformed JSON, missing or
// mistyped fields and unknown algorithms, 422 when the feature count differs
// from the served model. Unknown fields are ignored. record_id must be a
// non-negative integer below 2^64.
namespace attrinf::serving {

inline constexpr int kStatusOk = 200;
inline constexpr int kStatusBadRequest = 400;
inline constexpr int kStatusNotFound = 404;
inline constexpr int kStatusUnprocessable = 422;
inline constexpr int kStatusInternal = 500;

// A request the service refuses, with the HTTP status to answer.
class RequestError : public ProtocolError {
 public:
  RequestError(int status, const std::string& message) : ProtocolError(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct PredictRequest {
  Eigen::VectorXd features;
};

struct PredictResponse {
  double probability = 0.0;
};

struct ExplainRequest {
  Eigen::VectorXd features;
  explain::Algorithm algorithm = explain::Algorithm::kIntegratedGradients;
  std::optional<std::uint64_t> record_id;
};

struct ExplainResponse {
  Eigen::VectorXd scores;
  double delta = 0.0;
};

// Parsers throw RequestError(400) on anything malformed.
PredictRequest parse_predict_request(std::string_view body);
ExplainRequest parse_explain_request(std::string_view body);
// Throw ProtocolError on a malformed response.
PredictResponse parse_predict_response(std::string_view body);
ExplainResponse parse_explain_response(std::string_view body);

std::string to_body(const PredictRequest& r);
std::string to_body(const ExplainRequest& r);
std::string to_body(const PredictResponse& r);
std::string to_body(const ExplainResponse& r);
std::string error_body(std::string_view message);

}  // namespace attrinf::serving

#endif  // ATTRINF_SERVING_PROTOCOL_H_
