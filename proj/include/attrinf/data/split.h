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

#ifndef ATTRINF_DATA_SPLIT_H_
#define ATTRINF_DATA_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "attrinf/data/encoder.h"

namespace attrinf::data {

// Row positions of the four partitions. test is aux followed by eval.
struct SplitIndices {
  std::vector<std::size_t> target_train;
  std::vector<std::size_t> test;
  std::vector<std::size_t> aux;
  std::vector<std::size_t> eval;
};

// Seeded shuffle, then contiguous slices: round(0.7 n) rows train the target
// model, the remaining test rows are halved into aux (floor) and eval.
// Requires n >= 10.
SplitIndices split_indices(std::size_t n, std::uint64_t seed);

struct DatasetSplits {
  TabularDataset target_train;
  TabularDataset test;
  TabularDataset aux;
  TabularDataset eval;
  std::uint64_t split_seed = 0;
};

DatasetSplits split(const TabularDataset& ds, std::uint64_t seed);

// Splits raw rows first, fits the encoder on the training slice only and
// encodes every partition with it.
DatasetSplits prepare_splits(const RawTable& table, const TabularSchema& schema, bool include_sensitive,
                             std::uint64_t seed, Encoder* encoder_out = nullptr);

// Fraction of rows with s = 1.
double sensitive_base_rate(const TabularDataset& ds);

}  // namespace attrinf::data

#endif  // ATTRINF_DATA_SPLIT_H_
