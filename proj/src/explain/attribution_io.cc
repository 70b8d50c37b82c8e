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

#include "attrinf/explain/attribution_io.h"

#include <fstream>
#include <sstream>

#include "attrinf/common/error.h"
#include "attrinf/common/format.h"
#include "attrinf/common/kv_file.h"

namespace attrinf::explain {

void write_explanations(std::ostream& out, std::span<const ExplanationRecord> records) {
  const Eigen::Index d = records.empty() ? 0 : records.front().attribution.scores.size();
  out << "record_id,algorithm,target,baseline_id,delta";
  for (Eigen::Index i = 0; i < d; ++i) out << ",score_" << i;
  out << '\n';
  for (const auto& rec : records) {
    const auto& a = rec.attribution;
    if (a.scores.size() != d) throw DimensionMismatch("explanations of differing widths in one file");
    out << rec.record_id << ',' << to_string(a.algorithm) << ',' << nn::to_string(a.target) << ','
        << a.baseline_id << ',' << format_double(a.delta);
    for (Eigen::Index i = 0; i < d; ++i) out << ',' << format_double(a.scores(i));
    out << '\n';
  }
}

void write_explanations(const std::filesystem::path& path, std::span<const ExplanationRecord> records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_explanations(out, records);
}

std::vector<ExplanationRecord> read_explanations(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ProtocolError("explanation file is empty");
  const auto header = split_list(line);
  if (header.size() < 5 || header[0] != "record_id" || header[4] != "delta") {
    throw ProtocolError("explanation file has an unexpected header");
  }
  const auto d = static_cast<Eigen::Index>(header.size() - 5);
  std::vector<ExplanationRecord> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_list(line);
    if (cells.size() != header.size()) throw ProtocolError("explanation row has the wrong width");
    ExplanationRecord rec;
    rec.record_id = std::stoull(cells[0]);
    rec.attribution.algorithm = parse_algorithm(cells[1]);
    rec.attribution.target = nn::parse_scalar_target(cells[2]);
    rec.attribution.baseline_id = cells[3];
    rec.attribution.delta = parse_double(cells[4]);
    rec.attribution.scores.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) rec.attribution.scores(i) = parse_double(cells[5 + i]);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ExplanationRecord> read_explanations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_explanations(in);
}

}  // namespace attrinf::explain
