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


#pragma once

#include <array>
#include <cstdint>

#include "fmars/annotate/classes.hpp"
#include "fmars/geo/image.hpp"

namespace fmars::eval {

inline constexpr int kClasses = annotate::kNumClasses;

/// Pixel counts; rows are ground truth, columns are predictions.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<std::uint64_t, kClasses>, kClasses>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  /// Adds one count per pixel. Throws InputError on a shape mismatch or a
  /// label outside [0, kClasses).
  void accumulate(const geo::LabelRaster& gt, const geo::LabelRaster& pred);
  void merge(const ConfusionMatrix& other);

  std::uint64_t at(int gt, int pred) const { return counts_[gt][pred]; }
  std::uint64_t row_sum(int gt) const;
  std::uint64_t col_sum(int pred) const;
  std::uint64_t total() const;
  const Counts& counts() const { return counts_; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  Counts counts_{};
};

}  // namespace fmars::eval
