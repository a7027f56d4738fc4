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

#include "fmars/geo/box.hpp"

#include <algorithm>
#include <cmath>

#include "fmars/core/error.hpp"

namespace fmars::geo {

PixelBox make_box(double x0, double y0, double x1, double y1) {
  PixelBox box{x0, y0, x1, y1};
  if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x1) ||
      !std::isfinite(y1) || !box.valid()) {
    throw InputError("invalid pixel box: requires x1 > x0 and y1 > y0");
  }
  return box;
}

std::optional<PixelBox> clamp_box(const PixelBox& box, double width,
                                  double height) {
  PixelBox out{std::max(box.x0, 0.0), std::max(box.y0, 0.0),
               std::min(box.x1, width), std::min(box.y1, height)};
  if (!out.valid()) return std::nullopt;
  return out;
}

double box_iou(const PixelBox& a, const PixelBox& b) {
  const double iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace fmars::geo
