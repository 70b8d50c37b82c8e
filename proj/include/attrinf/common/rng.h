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

#ifndef ATTRINF_COMMON_RNG_H_
#define ATTRINF_COMMON_RNG_H_

#include <cstdint>
#include <random>

namespace attrinf {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of an independent stream `stream` under `base`. Used to give every
// record, tree or worker its own generator so that parallel and serial runs
// draw the same numbers.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace attrinf

#endif  // ATTRINF_COMMON_RNG_H_
