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


// Overlapping tile grid used for detection and segmentation.

#pragma once

#include <cstddef>
#include <vector>

#include "fmars/geo/affine.hpp"

namespace fmars::annotate {

struct TilingConfig {
  int size = 1024;
  int overlap = 128;

  /// Throws InputError unless size > 0 and 0 <= overlap < size.
  void validate() const;
};

/// A tile read from the raster plus the part of the image it owns. Owned
/// ("core") regions partition the image: each overlap is split at its
/// midpoint between the two tiles sharing it.
struct TileWindow {
  std::size_t index = 0;
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
  double core_x0 = 0.0;
  double core_y0 = 0.0;
  double core_x1 = 0.0;
  double core_y1 = 0.0;

  /// Half-open test in image pixel coordinates.
  bool owns(const geo::Point& px) const {
    return px.x >= core_x0 && px.x < core_x1 && px.y >= core_y0 && px.y < core_y1;
  }
};

/// Row-major tile grid. Tiles start every (size - overlap) pixels; the last
/// tile on each axis is aligned to the image edge. Images smaller than a
/// tile yield one clipped tile per axis.
std::vector<TileWindow> plan_tiles(int width, int height, const TilingConfig& cfg);

/// Tile owning image pixel point `px`; points outside the image are clamped
/// to the nearest edge first.
std::size_t owning_tile(const std::vector<TileWindow>& tiles, int width, int height,
                        geo::Point px);

}  // namespace fmars::annotate
