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

#include "attrinf/data/csv.h"

#include <fstream>

#include "attrinf/common/error.h"
#include "attrinf/common/kv_file.h"

namespace attrinf::data {

namespace {

// Reads one logical record. Returns false at end of input.
bool next_record(std::istream& in, std::vector<std::string>& fields, long& line_no) {
  fields.clear();
  std::string field;
  bool quoted = false;       // inside quotes
  bool was_quoted = false;   // current field started with a quote
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line_no;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in.peek() == '\n') in.get(ch);
      ++line_no;
      fields.push_back(was_quoted ? field : trim(field));
      return true;
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw IoError("unterminated quoted field near line " + std::to_string(line_no));
  if (!any) return false;
  ++line_no;
  fields.push_back(was_quoted ? field : trim(field));
  return true;
}

bool blank(const std::vector<std::string>& fields) { return fields.size() == 1 && fields[0].empty(); }

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> fields;
  long line_no = 0;
  while (next_record(in, fields, line_no)) {
    if (blank(fields)) continue;
    table.header = fields;
    break;
  }
  if (table.header.empty()) throw IoError("CSV input is empty");
  while (next_record(in, fields, line_no)) {
    if (blank(fields)) continue;
    if (fields.size() != table.header.size()) {
      throw IoError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                    " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace attrinf::data
