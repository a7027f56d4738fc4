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


// Prompt construction from vector sources.

#pragma once

#include <span>
#include <vector>

#include "fmars/annotate/classes.hpp"
#include "fmars/annotate/tiling.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::annotate {

struct FootprintPrompt {
  geo::PixelBox box;           // tile-local pixels, clamped to the tile
  std::size_t footprint = 0;   // index into the footprint list
};

/// AABB of every footprint owned by `tile` (centroid in the tile's core
/// region, see owning_tile), in tile-local pixels.
std::vector<FootprintPrompt> footprints_to_prompts(std::span<const ingest::Footprint> footprints,
                                                   const geo::AffineTransform& t,
                                                   const std::vector<TileWindow>& tiles,
                                                   const TileWindow& tile, int image_width,
                                                   int image_height);

/// Pixel-space AABB of a world polygon.
geo::PixelBox pixel_aabb(const geo::Polygon& world, const geo::AffineTransform& t);

/// One buffered polygon per polyline, radius given in meters. Class Roads,
/// confidence 1.0, no source tile. No union across features.
std::vector<InstanceAnnotation> roads_to_instances(const ingest::RoadGraph& roads,
                                                   double radius_m,
                                                   const geo::AffineTransform& t);

}  // namespace fmars::annotate
