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


// Per-class accuracy (recall) and IoU, and their unweighted means.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "fmars/eval/confusion.hpp"

namespace fmars::eval {

/// Fractions in [0, 1]. acc is unset when the class has no ground-truth
/// pixels; both are unset when the class is absent from gt and pred.
struct ClassScore {
  std::optional<double> acc;
  std::optional<double> iou;
};

struct Metrics {
  std::array<ClassScore, kClasses> per_class;
  double m_acc = 0.0;  // mean over classes with a defined acc
  double m_iou = 0.0;  // mean over classes with a defined iou
};

/// Throws InputError for an all-zero matrix.
Metrics class_metrics(const ConfusionMatrix& cm);

/// Mean of the set values; InputError if none is set.
double defined_mean(std::span<const std::optional<double>> values);

/// Fraction as a percentage with two decimals, e.g. 0.61905 -> "61.91".
std::string format_percent(double fraction);

/// Mean of values that are already rounded to two decimals (percent),
/// rounded half up to two decimals, computed exactly in hundredths.
double reported_mean(std::span<const double> percents);

}  // namespace fmars::eval
