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

#ifndef ATTRINF_EXPLAIN_ATTRIBUTION_IO_H_
#define ATTRINF_EXPLAIN_ATTRIBUTION_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "attrinf/explain/explainers.h"

namespace attrinf::explain {

struct ExplanationRecord {
  std::uint64_t record_id = 0;
  Attribution attribution;
};

// Comma-separated, header `record_id,algorithm,target,baseline_id,delta,
// score_0..score_{d-1}`; doubles are written in shortest round-trip form.
void write_explanations(std::ostream& out, std::span<const ExplanationRecord> records);
void write_explanations(const std::filesystem::path& path, std::span<const ExplanationRecord> records);
std::vector<ExplanationRecord> read_explanations(std::istream& in);
std::vector<ExplanationRecord> read_explanations(const std::filesystem::path& path);

}  // namespace attrinf::explain

#endif  // ATTRINF_EXPLAIN_ATTRIBUTION_IO_H_
