// Copyright 2026 The FMARS Authors.
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


#include "fmars/eval/metrics.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "fmars/core/error.hpp"

namespace fmars::eval {

Metrics class_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw InputError("confusion matrix is empty");
  Metrics m;
  std::vector<std::optional<double>> accs;
  std::vector<std::optional<double>> ious;
  for (int c = 0; c < kClasses; ++c) {
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t gt = cm.row_sum(c);
    const std::uint64_t pred = cm.col_sum(c);
    ClassScore& s = m.per_class[c];
    if (gt > 0) s.acc = static_cast<double>(tp) / static_cast<double>(gt);
    if (gt + pred > 0) s.iou = static_cast<double>(tp) / static_cast<double>(gt + pred - tp);
    accs.push_back(s.acc);
    ious.push_back(s.iou);
  }
  m.m_acc = defined_mean(accs);
  m.m_iou = defined_mean(ious);
  return m;
}

double defined_mean(std::span<const std::optional<double>> values) {
  double sum = 0.0;
  int n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n == 0) throw InputError("no defined values to average");
  return sum / n;
}

std::string format_percent(double fraction) {
  return fmt::format("{:.2f}", std::round(fraction * 10000.0) / 100.0);
}

double reported_mean(std::span<const double> percents) {
  if (percents.empty()) throw InputError("no values to average");
  long long sum = 0;
  for (double v : percents) {
    if (!(v >= 0.0)) throw InputError("percentages must be non-negative");
    sum += std::llround(v * 100.0);
  }
  const auto k = static_cast<long long>(percents.size());
  const long long hundredths = (2 * sum + k) / (2 * k);
  return static_cast<double>(hundredths) / 100.0;
}

}  // namespace fmars::eval
