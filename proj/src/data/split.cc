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

#include "attrinf/data/split.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "attrinf/common/error.h"

namespace attrinf::data {

SplitIndices split_indices(std::size_t n, std::uint64_t seed) {
  if (n < 10) throw InvalidArgument("splitting needs at least 10 rows, got " + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t n_train = (7 * n + 5) / 10;
  const std::size_t n_aux = (n - n_train) / 2;
  SplitIndices s;
  s.target_train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  s.aux.assign(s.test.begin(), s.test.begin() + static_cast<std::ptrdiff_t>(n_aux));
  s.eval.assign(s.test.begin() + static_cast<std::ptrdiff_t>(n_aux), s.test.end());
  return s;
}

DatasetSplits split(const TabularDataset& ds, std::uint64_t seed) {
  const SplitIndices idx = split_indices(ds.rows(), seed);
  return {ds.subset(idx.target_train), ds.subset(idx.test), ds.subset(idx.aux), ds.subset(idx.eval), seed};
}

DatasetSplits prepare_splits(const RawTable& table, const TabularSchema& schema, bool include_sensitive,
                             std::uint64_t seed, Encoder* encoder_out) {
  const SplitIndices idx = split_indices(table.rows(), seed);
  const Encoder enc = Encoder::fit(table.subset(idx.target_train), schema);
  DatasetSplits out{enc.transform(table.subset(idx.target_train), include_sensitive),
                    enc.transform(table.subset(idx.test), include_sensitive),
                    enc.transform(table.subset(idx.aux), include_sensitive),
                    enc.transform(table.subset(idx.eval), include_sensitive), seed};
  if (encoder_out) *encoder_out = enc;
  return out;
}

double sensitive_base_rate(const TabularDataset& ds) {
  if (ds.rows() == 0) throw InvalidArgument("base rate of an empty dataset");
  const auto positives = std::count(ds.sensitive.begin(), ds.sensitive.end(), 1);
  return static_cast<double>(positives) / static_cast<double>(ds.rows());
}

}  // namespace attrinf::data
