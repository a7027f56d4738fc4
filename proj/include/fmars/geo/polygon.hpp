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
#include <string>
#include <vector>

#include "fmars/geo/affine.hpp"
#include "fmars/geo/box.hpp"
#include "fmars/geo/image.hpp"

namespace fmars::geo {

/// Closed ring: front() == back(), at least 4 stored vertices.
using Ring = std::vector<Point>;

enum class CoordSpace { kPixel, kWorld };

/// Polygon with holes. Orientation follows the sign of the shoelace area:
/// the exterior is counter-clockwise (positive), holes clockwise (negative).
struct Polygon {
  Ring exterior;
  std::vector<Ring> holes;
  CoordSpace space = CoordSpace::kPixel;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool intersects(const Bounds& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y &&
           o.min_y <= max_y;
  }
};

double signed_ring_area(std::span<const Point> ring);
/// Exterior area minus hole areas.
double polygon_area(const Polygon& poly);
/// Area-weighted centroid of the polygon (holes subtracted).
Point polygon_centroid(const Polygon& poly);
Bounds ring_bounds(std::span<const Point> ring);
Bounds polygon_bounds(const Polygon& poly);

/// Closes rings and fixes winding (exterior CCW, holes CW).
void normalize(Polygon& poly);

/// Empty string if `poly` satisfies every polygon invariant (closed rings,
/// >= 4 vertices, simple, correctly wound, holes inside), else a reason.
std::string validity_error(const Polygon& poly);

/// Maps every vertex through `t` (pixel -> world) and re-normalizes
/// winding, since a north-up transform mirrors the y axis.
Polygon to_world(const Polygon& poly, const AffineTransform& t);
Polygon to_pixel(const Polygon& poly, const AffineTransform& t);
Polygon translated(const Polygon& poly, double dx, double dy);

/// Area of intersection over area of union. Both polygons must be valid.
double polygon_iou(const Polygon& a, const Polygon& b);

/// True if the polygon and the closed rectangle share at least one point.
bool intersects_bounds(const Polygon& poly, const Bounds& bounds);

/// Axis-aligned rectangle polygon.
Polygon box_polygon(const PixelBox& box, CoordSpace space);

/// Points within `radius` of the polyline, with round caps and round joins.
/// Arcs are approximated by `points_per_circle` segments per full circle.
/// `radius` is in the units of `line`. Throws InputError for fewer than two
/// distinct points or a non-positive radius.
Polygon buffer_polyline(std::span<const Point> line, double radius,
                        int points_per_circle = 64);

/// Sets pixels whose centers lie inside the exterior and outside every hole.
BinaryMask rasterize_polygon(const Polygon& poly, int height, int width);

/// Writes `value` into every pixel rasterize_polygon would set.
void rasterize_into(const Polygon& poly, Grid8& grid, std::uint8_t value);

struct PolygonizeOptions {
  double min_area_px = 4.0;
  double simplify_tol_px = 1.0;
};

/// One polygon per 4-connected foreground component, holes preserved,
/// simplified with Douglas-Peucker. Output is in pixel coordinates with
/// vertices on pixel corners, ordered by component scan order.
std::vector<Polygon> polygonize_mask(const BinaryMask& mask,
                                     const PolygonizeOptions& opts = {});

/// Douglas-Peucker on a closed ring. Returns an empty ring if fewer than
/// three distinct vertices survive.
Ring simplify_ring(const Ring& ring, double tolerance);

}  // namespace fmars::geo
