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


#include "fmars/eval/confusion.hpp"

#include <string>

#include "fmars/core/error.hpp"

namespace fmars::eval {

void ConfusionMatrix::accumulate(const geo::LabelRaster& gt, const geo::LabelRaster& pred) {
  if (gt.width != pred.width || gt.height != pred.height) {
    throw InputError("label shapes differ: " + std::to_string(gt.width) + "x" +
                     std::to_string(gt.height) + " vs " + std::to_string(pred.width) + "x" +
                     std::to_string(pred.height));
  }
  Counts local{};
  for (std::size_t i = 0; i < gt.data.size(); ++i) {
    const std::uint8_t g = gt.data[i];
    const std::uint8_t p = pred.data[i];
    if (g >= kClasses || p >= kClasses) {
      throw InputError("label value " + std::to_string(g >= kClasses ? g : p) +
                       " is not a class id");
    }
    ++local[g][p];
  }
  merge(ConfusionMatrix(local));
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  for (int g = 0; g < kClasses; ++g) {
    for (int p = 0; p < kClasses; ++p) counts_[g][p] += other.counts_[g][p];
  }
}

std::uint64_t ConfusionMatrix::row_sum(int gt) const {
  std::uint64_t s = 0;
  for (int p = 0; p < kClasses; ++p) s += counts_[gt][p];
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(int pred) const {
  std::uint64_t s = 0;
  for (int g = 0; g < kClasses; ++g) s += counts_[g][pred];
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (int g = 0; g < kClasses; ++g) s += row_sum(g);
  return s;
}

}  // namespace fmars::eval
