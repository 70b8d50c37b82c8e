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

#ifndef ATTRINF_PIPELINE_AUDIT_H_
#define ATTRINF_PIPELINE_AUDIT_H_

#include <span>
#include <string>
#include <vector>

#include "attrinf/data/encoder.h"
#include "attrinf/explain/explainers.h"
#include "attrinf/pipeline/report.h"

namespace attrinf::pipeline {

struct AuditContext {
  std::string dataset;
  std::string threat_model;
};

// Correlation of s with y and with each non-sensitive feature column of `ds`.
std::vector<CorrelationRow> audit_data(const data::TabularDataset& ds, const AuditContext& ctx);

// Correlation of s with the attribution of the sensitive columns (when the
// model has them) and of every non-sensitive column. attributions[i]
// explains row i of `ds`.
std::vector<CorrelationRow> audit_attributions(const data::TabularDataset& ds,
                                               std::span<const explain::Attribution> attributions,
                                               const std::string& explainer, const AuditContext& ctx);

}  // namespace attrinf::pipeline

#endif  // ATTRINF_PIPELINE_AUDIT_H_
