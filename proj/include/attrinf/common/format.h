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

#ifndef ATTRINF_COMMON_FORMAT_H_
#define ATTRINF_COMMON_FORMAT_H_

#include <string>

namespace attrinf {

// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

// Strict full-string parse; throws InvalidArgument.
double parse_double(const std::string& text);

}  // namespace attrinf

#endif  // ATTRINF_COMMON_FORMAT_H_
