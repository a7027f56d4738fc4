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

#include <span>
#include <vector>

#include "fmars/annotate/classes.hpp"
#include "fmars/geo/affine.hpp"
#include "fmars/geo/image.hpp"

namespace fmars::annotate {

struct PixelWindow {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

/// Projects instances to pixel space once so many windows can be rendered
/// cheaply. render() is const and safe to call concurrently.
class SemanticRenderer {
 public:
  SemanticRenderer(std::span<const InstanceAnnotation> instances, const geo::AffineTransform& t);

  geo::LabelRaster render(const PixelWindow& window) const;

 private:
  struct Item {
    geo::Polygon pixel;
    geo::Bounds bounds;
    ClassLabel label;
  };
  std::vector<Item> items_;  // ascending precedence
};

/// Per-pixel class ids for `window` of the raster described by `t`.
/// Overlaps resolve Buildings over Roads over HighVegetation; uncovered
/// pixels are Background.
geo::LabelRaster render_semantic(std::span<const InstanceAnnotation> instances,
                                 const PixelWindow& window, const geo::AffineTransform& t);

}  // namespace fmars::annotate
