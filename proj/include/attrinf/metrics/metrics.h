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

#ifndef ATTRINF_METRICS_METRICS_H_
#define ATTRINF_METRICS_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace attrinf::metrics {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// Positive class is 1. Throws on length mismatch, empty input or labels
// outside {0, 1}.
ConfusionCounts confusion(std::span<const int> predicted, std::span<const int> truth);

// Each is 0 when its denominator is 0.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
double f1(const ConfusionCounts& c);

// F1 of predicting 1 for every record when a fraction `base_rate` is positive.
double all_positive_f1(double base_rate);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
};

// One point per distinct score, predicting 1 iff score >= threshold.
// Points are ordered by strictly decreasing threshold, so recall is
// non-decreasing along the curve.
struct PrCurve {
  std::vector<PrPoint> points;
  double base_rate = 0.0;
};

PrCurve pr_curve(std::span<const double> scores, std::span<const int> truth);

// `threshold,precision,recall,f1` with a header line.
void write_pr_curve(std::ostream& out, const PrCurve& curve);
void write_pr_curve(const std::filesystem::path& path, const PrCurve& curve);

// Sample Pearson correlation. Throws InvalidArgument for length mismatch,
// fewer than two points or a constant argument.
double pearson(std::span<const double> a, std::span<const double> b);

struct MeanStd {
  double mean = 0.0;
  double stdev = 0.0;  // population
  std::size_t count = 0;
};

MeanStd mean_std(std::span<const double> values);

}  // namespace attrinf::metrics

#endif  // ATTRINF_METRICS_METRICS_H_
