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

#include "attrinf/serving/protocol.h"

namespace attrinf::serving {
namespace {

using nlohmann::json;

json parse_object(std::string_view body) {
  json j = json::parse(body.begin(), body.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw RequestError(kStatusBadRequest, "malformed JSON body");
  if (!j.is_object()) throw RequestError(kStatusBadRequest, "request body must be a JSON object");
  return j;
}

Eigen::VectorXd read_vector(const json& j, const char* field, int status) {
  const auto it = j.find(field);
  if (it == j.end()) throw RequestError(status, std::string("missing field \"") + field + "\"");
  if (!it->is_array()) throw RequestError(status, std::string("field \"") + field + "\" must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(it->size()));
  Eigen::Index i = 0;
  for (const auto& e : *it) {
    if (!e.is_number()) throw RequestError(status, std::string("field \"") + field + "\" must hold numbers");
    v(i++) = e.get<double>();
  }
  return v;
}

double read_number(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end() || !it->is_number()) {
    throw ProtocolError(std::string("response lacks numeric field \"") + field + "\"");
  }
  return it->get<double>();
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json parse_response(std::string_view body) {
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("malformed response body");
  return j;
}

}  // namespace

PredictRequest parse_predict_request(std::string_view body) {
  const json j = parse_object(body);
  return {read_vector(j, "features", kStatusBadRequest)};
}

ExplainRequest parse_explain_request(std::string_view body) {
  const json j = parse_object(body);
  ExplainRequest r;
  r.features = read_vector(j, "features", kStatusBadRequest);
  const auto alg = j.find("algorithm");
  if (alg == j.end() || !alg->is_string()) {
    throw RequestError(kStatusBadRequest, "field \"algorithm\" must be a string");
  }
  try {
    r.algorithm = explain::parse_algorithm(alg->get<std::string>());
  } catch (const InvalidArgument&) {
    throw RequestError(kStatusBadRequest, "unknown algorithm \"" + alg->get<std::string>() + "\"");
  }
  const auto id = j.find("record_id");
  if (id != j.end() && !id->is_null()) {
    if (!id->is_number_unsigned()) {
      throw RequestError(kStatusBadRequest, "field \"record_id\" must be a non-negative integer");
    }
    r.record_id = id->get<std::uint64_t>();
  }
  return r;
}

PredictResponse parse_predict_response(std::string_view body) {
  return {read_number(parse_response(body), "probability")};
}

ExplainResponse parse_explain_response(std::string_view body) {
  const json j = parse_response(body);
  ExplainResponse r;
  try {
    r.scores = read_vector(j, "scores", kStatusInternal);
  } catch (const RequestError& e) {
    throw ProtocolError(std::string("bad explain response: ") + e.what());
  }
  r.delta = read_number(j, "delta");
  return r;
}

std::string to_body(const PredictRequest& r) { return json{{"features", vector_json(r.features)}}.dump(); }

std::string to_body(const ExplainRequest& r) {
  json j = {{"features", vector_json(r.features)}, {"algorithm", explain::to_string(r.algorithm)}};
  if (r.record_id) j["record_id"] = *r.record_id;
  return j.dump();
}

std::string to_body(const PredictResponse& r) { return json{{"probability", r.probability}}.dump(); }

std::string to_body(const ExplainResponse& r) {
  return json{{"scores", vector_json(r.scores)}, {"delta", r.delta}}.dump();
}

std::string error_body(std::string_view message) { return json{{"error", message}}.dump(); }

}  // namespace attrinf::serving
