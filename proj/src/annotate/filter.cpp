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


#include "fmars/annotate/filter.hpp"

#include <algorithm>
#include <numeric>

#include "fmars/core/error.hpp"

namespace fmars::annotate {

void FilterConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(box_threshold)) throw InputError("box_threshold must be in [0,1]");
  if (!unit(text_threshold)) throw InputError("text_threshold must be in [0,1]");
  if (!unit(nms_iou)) throw InputError("nms_iou must be in [0,1]");
  if (!(min_aspect > 0.0 && min_aspect <= 1.0)) throw InputError("min_aspect must be in (0,1]");
  if (!(max_area_m2 > 0.0)) throw InputError("max_area_m2 must be positive");
}

std::vector<geo::ScoredBox> filter_boxes(std::span<const geo::ScoredBox> boxes,
                                         const FilterConfig& cfg, double resolution_m) {
  if (!(resolution_m > 0.0)) throw InputError("resolution_m must be positive");

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].score >= cfg.box_threshold && boxes[i].box.valid()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].score > boxes[b].score;
  });

  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return geo::box_iou(boxes[k].box, boxes[i].box) >= cfg.nms_iou;
    });
    if (!suppressed) kept.push_back(i);
  }

  const double px_area = resolution_m * resolution_m;
  std::vector<geo::ScoredBox> out;
  for (std::size_t i : kept) {
    const geo::PixelBox& b = boxes[i].box;
    const double w = b.width();
    const double h = b.height();
    if (std::min(w, h) / std::max(w, h) < cfg.min_aspect) continue;
    if (w * h * px_area > cfg.max_area_m2) continue;
    out.push_back(boxes[i]);
  }
  return out;
}

}  // namespace fmars::annotate
