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


#include "fmars/annotate/prompts.hpp"

#include "fmars/core/error.hpp"

namespace fmars::annotate {

geo::PixelBox pixel_aabb(const geo::Polygon& world, const geo::AffineTransform& t) {
  const geo::Bounds b = geo::polygon_bounds(geo::to_pixel(world, t));
  return {b.min_x, b.min_y, b.max_x, b.max_y};
}

std::vector<FootprintPrompt> footprints_to_prompts(std::span<const ingest::Footprint> footprints,
                                                   const geo::AffineTransform& t,
                                                   const std::vector<TileWindow>& tiles,
                                                   const TileWindow& tile, int image_width,
                                                   int image_height) {
  std::vector<FootprintPrompt> out;
  for (std::size_t i = 0; i < footprints.size(); ++i) {
    const geo::Polygon px = geo::to_pixel(footprints[i].polygon, t);
    const geo::Point c = geo::polygon_centroid(px);
    if (owning_tile(tiles, image_width, image_height, c) != tile.index) continue;
    const geo::Bounds b = geo::polygon_bounds(px);
    const geo::PixelBox local{b.min_x - tile.x0, b.min_y - tile.y0, b.max_x - tile.x0,
                              b.max_y - tile.y0};
    if (auto clamped = geo::clamp_box(local, tile.width, tile.height)) {
      out.push_back({*clamped, i});
    }
  }
  return out;
}

std::vector<InstanceAnnotation> roads_to_instances(const ingest::RoadGraph& roads,
                                                   double radius_m,
                                                   const geo::AffineTransform& t) {
  if (!(radius_m > 0.0)) throw InputError("road buffer radius must be positive");
  const double radius = radius_m * t.world_units_per_meter();
  std::vector<InstanceAnnotation> out;
  out.reserve(roads.polylines.size());
  for (const ingest::Polyline& line : roads.polylines) {
    geo::Polygon poly = geo::buffer_polyline(line, radius);
    poly.space = geo::CoordSpace::kWorld;
    out.push_back({std::move(poly), ClassLabel::kRoads, 1.0, Provenance::kRoadBuffer,
                   std::nullopt});
  }
  return out;
}

}  // namespace fmars::annotate
