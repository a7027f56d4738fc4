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


// Candidate-box filter stack applied to detector output.

#pragma once

#include <span>
#include <vector>

#include "fmars/geo/box.hpp"

namespace fmars::annotate {

struct FilterConfig {
  double box_threshold = 0.12;
  double text_threshold = 0.3;
  double nms_iou = 0.5;
  double min_aspect = 0.5;     // min(w,h) / max(w,h)
  double max_area_m2 = 7000.0;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

/// In order: score >= box_threshold; greedy NMS by descending score (ties to
/// the lower input index) suppressing IoU >= nms_iou; aspect >= min_aspect;
/// area * resolution_m^2 <= max_area_m2. Survivors by descending score.
/// Degenerate boxes are dropped with the score filter.
std::vector<geo::ScoredBox> filter_boxes(std::span<const geo::ScoredBox> boxes,
                                         const FilterConfig& cfg, double resolution_m);

}  // namespace fmars::annotate
