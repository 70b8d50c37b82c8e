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

#include "attrinf/serving/service.h"

#include <utility>

#include "attrinf/serving/protocol.h"

namespace attrinf::serving {

ExplanationService::ExplanationService(std::shared_ptr<const explain::Explainer> explainer)
    : explainer_(std::move(explainer)) {
  if (!explainer_) throw InvalidArgument("service needs an explainer");
}

int ExplanationService::input_dim() const { return explainer_->model().input_dim(); }

namespace {

void check_dim(const Eigen::VectorXd& x, int dim) {
  if (x.size() != dim) {
    throw RequestError(kStatusUnprocessable, "expected " + std::to_string(dim) + " features, got " +
                                                 std::to_string(x.size()));
  }
}

template <typename Fn>
HttpReply guarded(Fn&& fn) {
  try {
    return {kStatusOk, fn()};
  } catch (const RequestError& e) {
    return {e.status(), error_body(e.what())};
  } catch (const DimensionMismatch& e) {
    return {kStatusUnprocessable, error_body(e.what())};
  } catch (const InvalidArgument& e) {
    return {kStatusBadRequest, error_body(e.what())};
  } catch (const std::exception& e) {
    return {kStatusInternal, error_body(e.what())};
  }
}

}  // namespace

HttpReply ExplanationService::handle_predict(std::string_view body) const {
  return guarded([&] {
    const PredictRequest req = parse_predict_request(body);
    check_dim(req.features, input_dim());
    return to_body(PredictResponse{explainer_->predict(req.features)});
  });
}

HttpReply ExplanationService::handle_explain(std::string_view body) const {
  return guarded([&] {
    const ExplainRequest req = parse_explain_request(body);
    check_dim(req.features, input_dim());
    const auto a = explainer_->explain(req.algorithm, req.features, req.record_id);
    return to_body(ExplainResponse{a.scores, a.delta});
  });
}

HttpReply ExplanationService::handle_health() const { return {kStatusOk, R"({"status":"ok"})"}; }

}  // namespace attrinf::serving
