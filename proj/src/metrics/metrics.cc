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

#include "attrinf/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include "attrinf/common/error.h"
#include "attrinf/common/format.h"

namespace attrinf::metrics {

namespace {

void check_binary(std::span<const int> v, const char* what) {
  for (int x : v) {
    if (x != 0 && x != 1) throw InvalidArgument(std::string(what) + " must contain only 0 and 1");
  }
}

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

ConfusionCounts confusion(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw InvalidArgument("predicted and truth lengths differ");
  if (predicted.empty()) throw InvalidArgument("confusion counts of an empty set");
  check_binary(predicted, "predictions");
  check_binary(truth, "truth labels");
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == 1) {
      (truth[i] == 1 ? c.tp : c.fp)++;
    } else {
      (truth[i] == 1 ? c.fn : c.tn)++;
    }
  }
  return c;
}

double precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp); }

double recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn); }

double f1(const ConfusionCounts& c) {
  const double p = precision(c);
  const double r = recall(c);
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double all_positive_f1(double base_rate) {
  if (base_rate <= 0.0) return 0.0;
  return 2.0 * base_rate / (1.0 + base_rate);
}

PrCurve pr_curve(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size()) throw InvalidArgument("scores and truth lengths differ");
  check_binary(truth, "truth labels");
  const auto positives = std::count(truth.begin(), truth.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(truth.size())) {
    throw InvalidArgument("a precision-recall curve needs both classes");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgument("scores must be finite");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  PrCurve curve;
  curve.base_rate = static_cast<double>(positives) / static_cast<double>(truth.size());
  ConfusionCounts c;
  c.fn = positives;
  c.tn = static_cast<std::int64_t>(truth.size()) - positives;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    // Admit every record tied at this score before emitting the point.
    while (i < order.size() && scores[order[i]] == threshold) {
      if (truth[order[i]] == 1) {
        ++c.tp;
        --c.fn;
      } else {
        ++c.fp;
        --c.tn;
      }
      ++i;
    }
    curve.points.push_back({threshold, precision(c), recall(c), f1(c), c});
  }
  return curve;
}

void write_pr_curve(std::ostream& out, const PrCurve& curve) {
  out << "threshold,precision,recall,f1\n";
  for (const auto& p : curve.points) {
    out << fmt(p.threshold) << ',' << fmt(p.precision) << ',' << fmt(p.recall) << ',' << fmt(p.f1) << '\n';
  }
}

void write_pr_curve(const std::filesystem::path& path, const PrCurve& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_pr_curve(out, curve);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("pearson: lengths differ");
  if (a.size() < 2) throw InvalidArgument("pearson: need at least two points");
  // The mean of a constant column need not equal its value in floating point,
  // so constancy is tested on the raw values.
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(a) || constant(b)) throw InvalidArgument("pearson: correlation with a constant is undefined");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw InvalidArgument("pearson: correlation with a constant is undefined");
  const double r = sab / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stdev = std::sqrt(ss / n);
  return out;
}

}  // namespace attrinf::metrics
