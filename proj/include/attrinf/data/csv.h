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

#ifndef ATTRINF_DATA_CSV_H_
#define ATTRINF_DATA_CSV_H_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace attrinf::data {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180 reader: a header line is required, fields may be double-quoted
// with "" escapes and embedded newlines, CRLF is accepted. Whitespace around
// unquoted fields is trimmed. Blank lines are skipped; a row with a different
// number of fields than the header is an error.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace attrinf::data

#endif  // ATTRINF_DATA_CSV_H_
