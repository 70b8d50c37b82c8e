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

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "attrinf/common/error.h"
#include "attrinf/data/csv.h"
#include "attrinf/data/encoder.h"
#include "attrinf/data/schema.h"
#include "attrinf/data/split.h"
#include "attrinf/data/table.h"
#include "gtest/gtest.h"

namespace attrinf::data {
namespace {

TabularSchema parse_schema(const std::string& text) {
  std::istringstream in(text);
  return TabularSchema::from_kv(KeyValueFile::parse(in, "schema"));
}

const char* kSchema =
    "name = toy\n"
    "columns = age:numeric, job:categorical\n"
    "label = income\n"
    "label_positive = high\n"
    "sensitive = race\n"
    "sensitive_positive = W\n";

const char* kCsv =
    "age,job,race,income\n"
    "20, clerk, W, low\n"
    "30, ?, B, high\n"
    "40, smith, B, high\n"
    "50, clerk, W, low\n"
    "60, smith, A, high\n";

RawTable load(const std::string& csv, const TabularSchema& schema) {
  std::istringstream in(csv);
  return load_csv(in, schema);
}

TEST(Csv, HandlesQuotesWhitespaceAndBlankLines) {
  std::istringstream in("\"a\",b\r\n\"x, \"\"y\"\"\",  2 \r\n\n\"multi\nline\",3\n");
  const auto t = read_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"x, \"y\"", "2"}));
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"multi\nline", "3"}));
}

TEST(Csv, RejectsRaggedRowsAndEmptyInput) {
  std::istringstream ragged("a,b\n1,2,3\n");
  EXPECT_THROW(read_csv(ragged), IoError);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), IoError);
  std::istringstream open_quote("a\n\"x\n");
  EXPECT_THROW(read_csv(open_quote), IoError);
  EXPECT_THROW(read_csv(std::filesystem::path("/nonexistent/file.csv")), IoError);
}

TEST(Schema, ParsesAndValidates) {
  const auto s = parse_schema(kSchema);
  EXPECT_EQ(s.name, "toy");
  ASSERT_EQ(s.columns.size(), 2u);
  EXPECT_EQ(s.columns[1].kind, ColumnKind::kCategorical);
  EXPECT_EQ(s.label_of("high"), 1);
  EXPECT_EQ(s.label_of("low"), 0);
  EXPECT_EQ(s.sensitive_of("W"), 1);
  EXPECT_EQ(s.sensitive_of("B"), 0);
  EXPECT_TRUE(s.is_missing("?"));
  EXPECT_TRUE(s.is_missing(""));
}

TEST(Schema, RejectsInconsistentDefinitions) {
  EXPECT_THROW(parse_schema("columns = a:numeric\nlabel = y\nlabel_positive = 1\nsensitive_positive = 1\n"),
               SchemaError);
  EXPECT_THROW(parse_schema("columns = a:numeric, s:numeric\nlabel = y\nlabel_positive = 1\nsensitive = s\n"
                            "sensitive_positive = 1\n"),
               SchemaError);
  EXPECT_THROW(parse_schema("columns = a:text\nlabel = y\nlabel_positive = 1\nsensitive = s\n"
                            "sensitive_positive = 1\n"),
               SchemaError);
  EXPECT_THROW(parse_schema("columns = a:numeric\nlabel = y\nlabel_positive = 1\nsensitive = s\n"
                            "sensitive_map = x:2\n"),
               SchemaError);
}

TEST(Schema, ExplicitMapRejectsUnlistedValues) {
  const auto s = parse_schema(
      "columns = a:numeric\nlabel = y\nlabel_positive = 1\nsensitive = s\nsensitive_map = M:1, F:0\n");
  EXPECT_EQ(s.sensitive_of("M"), 1);
  EXPECT_EQ(s.sensitive_of("F"), 0);
  EXPECT_THROW(s.sensitive_of("X"), SchemaError);
}

TEST(Table, DropsMissingRowsAndBinarizes) {
  const auto t = load(kCsv, parse_schema(kSchema));
  EXPECT_EQ(t.rows(), 4u);
  EXPECT_EQ(t.dropped_missing, 1u);
  EXPECT_EQ(t.labels, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(t.sensitive, (std::vector<int>{1, 0, 1, 0}));
  EXPECT_EQ(t.source_rows, (std::vector<std::size_t>{0, 2, 3, 4}));
  EXPECT_EQ(t.columns[0].numbers, (std::vector<double>{20, 40, 50, 60}));
}

TEST(Table, ReportsSchemaMismatch) {
  EXPECT_THROW(load("age,race,income\n1,W,low\n", parse_schema(kSchema)), SchemaError);
  EXPECT_THROW(load("age,job,race,income\nold,clerk,W,low\n", parse_schema(kSchema)), SchemaError);
  EXPECT_THROW(load("age,job,race,income\n", parse_schema(kSchema)), IoError);
}

TEST(Encoder, UsesTrainingStatisticsOnly) {
  const auto schema = parse_schema(kSchema);
  const auto t = load(kCsv, schema);
  const std::vector<std::size_t> train_rows = {0, 1, 2};
  const auto enc = Encoder::fit(t.subset(train_rows), schema);
  // Train ages 20, 40, 50: mean 110/3, population stdev sqrt(4200/27).
  EXPECT_DOUBLE_EQ(enc.mean(0), 110.0 / 3.0);
  EXPECT_DOUBLE_EQ(enc.stdev(0), std::sqrt(4200.0 / 27.0));
  EXPECT_EQ(enc.vocabulary(1), (std::vector<std::string>{"clerk", "smith"}));

  const auto ds = enc.transform(t, /*include_sensitive=*/true);
  ASSERT_EQ(ds.dim(), 1 + 3 + 1);
  EXPECT_EQ(ds.feature_names,
            (std::vector<std::string>{"age", "job=clerk", "job=smith", "job=<unknown>", "race"}));
  EXPECT_DOUBLE_EQ(ds.features(3, 0), (60.0 - 110.0 / 3.0) / std::sqrt(4200.0 / 27.0));
  EXPECT_EQ(ds.features.col(4), Eigen::Vector4d(1, 0, 1, 0));
  EXPECT_EQ(ds.sensitive_columns(), (std::vector<int>{4}));
  EXPECT_EQ(ds.nonsensitive_columns(), (std::vector<int>{0, 1, 2, 3}));

  const auto censored = enc.transform(t, /*include_sensitive=*/false);
  EXPECT_EQ(censored.dim(), 4);
  EXPECT_TRUE(censored.sensitive_columns().empty());
  EXPECT_EQ(censored.sensitive, ds.sensitive);
}

TEST(Encoder, CountsUnseenCategories) {
  const auto schema = parse_schema(kSchema);
  const auto t = load("age,job,race,income\n1,a,W,low\n2,a,B,high\n3,b,W,low\n", schema);
  const std::vector<std::size_t> train = {0, 1};
  const auto enc = Encoder::fit(t.subset(train), schema);
  const auto ds = enc.transform(t, false);
  EXPECT_EQ(ds.unknown_categories, 1u);
  EXPECT_EQ(ds.features(2, 2), 1.0);  // job=<unknown>
  // A constant training column keeps scale 1.
  const std::vector<std::size_t> one = {0};
  EXPECT_EQ(Encoder::fit(t.subset(one), schema).stdev(0), 1.0);
}

TEST(Split, PartitionsRowsDeterministically) {
  const auto idx = split_indices(1001, 5);
  EXPECT_EQ(idx.target_train.size(), 701u);
  EXPECT_EQ(idx.aux.size(), 150u);
  EXPECT_EQ(idx.eval.size(), 150u);
  std::vector<std::size_t> all = idx.target_train;
  all.insert(all.end(), idx.aux.begin(), idx.aux.end());
  all.insert(all.end(), idx.eval.begin(), idx.eval.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(1001);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  EXPECT_EQ(all, expected);
  std::vector<std::size_t> test = idx.aux;
  test.insert(test.end(), idx.eval.begin(), idx.eval.end());
  EXPECT_EQ(test, idx.test);
  EXPECT_EQ(split_indices(1001, 5).aux, idx.aux);
  EXPECT_NE(split_indices(1001, 6).aux, idx.aux);
  EXPECT_THROW(split_indices(9, 0), InvalidArgument);
}

TEST(Split, EncoderSeesOnlyTrainingRows) {
  std::ostringstream csv;
  csv << "age,job,race,income\n";
  for (int i = 0; i < 100; ++i) csv << i << ',' << (i < 70 ? "a" : "b") << ',' << (i % 2 ? "W" : "B") << ",low\n";
  const auto schema = parse_schema(kSchema);
  Encoder enc;
  const auto splits = prepare_splits(load(csv.str(), schema), schema, true, 3, &enc);
  double train_mean = 0.0;
  for (auto id : splits.target_train.record_ids) train_mean += static_cast<double>(id);
  train_mean /= static_cast<double>(splits.target_train.rows());
  EXPECT_NEAR(enc.mean(0), train_mean, 1e-9);
  EXPECT_NEAR(splits.target_train.features.col(0).mean(), 0.0, 1e-12);
  EXPECT_EQ(splits.aux.rows() + splits.eval.rows(), splits.test.rows());
}

TEST(Adult, LoadsThePublicCsv) {
  const std::filesystem::path csv = std::filesystem::path(ATTRINF_DATA_DIR) / "adult.csv";
  const std::filesystem::path schema_path = std::filesystem::path(ATTRINF_DATA_DIR) / ".." / "configs" /
                                            "adult_race.schema";
  if (!std::filesystem::exists(csv)) GTEST_SKIP() << "adult.csv not present";
  const auto schema = TabularSchema::load(schema_path);
  const auto t = load_csv(csv, schema);
  EXPECT_EQ(t.rows(), 45222u);
  const double white = std::accumulate(t.sensitive.begin(), t.sensitive.end(), 0.0) / static_cast<double>(t.rows());
  EXPECT_NEAR(white, 0.860, 0.005);
  const double rich = std::accumulate(t.labels.begin(), t.labels.end(), 0.0) / static_cast<double>(t.rows());
  EXPECT_NEAR(rich, 0.248, 0.005);
}

}  // namespace
}  // namespace attrinf::data
