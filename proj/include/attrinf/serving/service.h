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

#ifndef ATTRINF_SERVING_SERVICE_H_
#define ATTRINF_SERVING_SERVICE_H_

#include <memory>
#include <string>
#include <string_view>

#include "attrinf/explain/explainer.h"

namespace attrinf::serving {

struct HttpReply {
  int status = 200;
  std::string body;
};

// Transport-independent request handling. Holds only immutable state, so a
// single instance serves concurrent requests.
class ExplanationService {
 public:
  explicit ExplanationService(std::shared_ptr<const explain::Explainer> explainer);

  HttpReply handle_predict(std::string_view body) const;
  HttpReply handle_explain(std::string_view body) const;
  HttpReply handle_health() const;

  int input_dim() const;

 private:
  std::shared_ptr<const explain::Explainer> explainer_;
};

}  // namespace attrinf::serving

#endif  // ATTRINF_SERVING_SERVICE_H_
