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


#include "fmars/annotate/semantic.hpp"

#include <algorithm>
#include <vector>

#include "fmars/core/error.hpp"

namespace fmars::annotate {

SemanticRenderer::SemanticRenderer(std::span<const InstanceAnnotation> instances,
                                   const geo::AffineTransform& t) {
  for (const InstanceAnnotation& inst : instances) {
    if (inst.label == ClassLabel::kBackground) continue;
    geo::Polygon px = geo::to_pixel(inst.geometry, t);
    const geo::Bounds b = geo::polygon_bounds(px);
    items_.push_back({std::move(px), b, inst.label});
  }
  std::stable_sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
    return precedence_rank(a.label) < precedence_rank(b.label);
  });
}

geo::LabelRaster SemanticRenderer::render(const PixelWindow& window) const {
  if (window.width <= 0 || window.height <= 0) throw InputError("empty render window");
  geo::LabelRaster out(window.width, window.height);
  const geo::Bounds win{static_cast<double>(window.x0), static_cast<double>(window.y0),
                        static_cast<double>(window.x0 + window.width),
                        static_cast<double>(window.y0 + window.height)};
  for (const Item& item : items_) {
    if (!item.bounds.intersects(win)) continue;
    geo::rasterize_into(geo::translated(item.pixel, -window.x0, -window.y0), out,
                        static_cast<std::uint8_t>(item.label));
  }
  return out;
}

geo::LabelRaster render_semantic(std::span<const InstanceAnnotation> instances,
                                 const PixelWindow& window, const geo::AffineTransform& t) {
  return SemanticRenderer(instances, t).render(window);
}

}  // namespace fmars::annotate
