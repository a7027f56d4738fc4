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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "boost_adapt.hpp"
#include "fmars/geo/polygon.hpp"

namespace fmars::geo {

double signed_ring_area(std::span<const Point> ring) {
  if (ring.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

double polygon_area(const Polygon& poly) {
  double area = std::abs(signed_ring_area(poly.exterior));
  for (const Ring& hole : poly.holes) area -= std::abs(signed_ring_area(hole));
  return area;
}

namespace {

// Accumulates the first moments of a ring with the given sign.
void accumulate_moments(std::span<const Point> ring, double sign, double& area,
                        double& mx, double& my) {
  // Shift to the first vertex to keep large world coordinates well
  // conditioned.
  if (ring.empty()) return;
  const Point o = ring.front();
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point p{ring[i].x - o.x, ring[i].y - o.y};
    const Point q{ring[(i + 1) % n].x - o.x, ring[(i + 1) % n].y - o.y};
    const double cross = p.x * q.y - q.x * p.y;
    a += cross;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  const double ring_area = 0.5 * a;
  if (ring_area == 0.0) return;
  const double s = sign * (ring_area < 0 ? -1.0 : 1.0);
  area += s * ring_area;
  mx += s * (cx / 6.0 + ring_area * o.x);
  my += s * (cy / 6.0 + ring_area * o.y);
}

}  // namespace

Point polygon_centroid(const Polygon& poly) {
  double area = 0.0, mx = 0.0, my = 0.0;
  accumulate_moments(poly.exterior, 1.0, area, mx, my);
  for (const Ring& hole : poly.holes) accumulate_moments(hole, -1.0, area, mx, my);
  if (area == 0.0) {
    Point sum{};
    const std::size_t n = poly.exterior.size() > 1 ? poly.exterior.size() - 1 : 1;
    for (std::size_t i = 0; i < n && i < poly.exterior.size(); ++i) {
      sum.x += poly.exterior[i].x;
      sum.y += poly.exterior[i].y;
    }
    return {sum.x / n, sum.y / n};
  }
  return {mx / area, my / area};
}

Bounds ring_bounds(std::span<const Point> ring) {
  Bounds b{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const Point& p : ring) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

Bounds polygon_bounds(const Polygon& poly) { return ring_bounds(poly.exterior); }

namespace {

void close_ring(Ring& ring) {
  if (!ring.empty() && !(ring.front() == ring.back())) ring.push_back(ring.front());
}

void orient(Ring& ring, bool ccw) {
  const double area = signed_ring_area(ring);
  if ((ccw && area < 0) || (!ccw && area > 0)) std::reverse(ring.begin(), ring.end());
}

}  // namespace

void normalize(Polygon& poly) {
  close_ring(poly.exterior);
  orient(poly.exterior, true);
  for (Ring& hole : poly.holes) {
    close_ring(hole);
    orient(hole, false);
  }
}

std::string validity_error(const Polygon& poly) {
  auto check_ring = [](const Ring& ring, const char* what) -> std::string {
    if (ring.size() < 4) return std::string(what) + " has fewer than 4 vertices";
    if (!(ring.front() == ring.back())) return std::string(what) + " is not closed";
    for (const Point& p : ring) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        return std::string(what) + " has non-finite coordinates";
      }
    }
    return {};
  };
  if (auto err = check_ring(poly.exterior, "exterior"); !err.empty()) return err;
  if (signed_ring_area(poly.exterior) <= 0) return "exterior is not counter-clockwise";
  for (const Ring& hole : poly.holes) {
    if (auto err = check_ring(hole, "hole"); !err.empty()) return err;
    if (signed_ring_area(hole) >= 0) return "hole is not clockwise";
  }
  std::string reason;
  if (!detail::bg::is_valid(detail::to_boost(poly), reason)) return reason;
  return {};
}

Polygon to_world(const Polygon& poly, const AffineTransform& t) {
  Polygon out = poly;
  out.space = CoordSpace::kWorld;
  for (Point& p : out.exterior) p = pixel_to_world(t, p);
  for (Ring& hole : out.holes) {
    for (Point& p : hole) p = pixel_to_world(t, p);
  }
  normalize(out);
  return out;
}

Polygon to_pixel(const Polygon& poly, const AffineTransform& t) {
  Polygon out = poly;
  out.space = CoordSpace::kPixel;
  for (Point& p : out.exterior) p = world_to_pixel(t, p);
  for (Ring& hole : out.holes) {
    for (Point& p : hole) p = world_to_pixel(t, p);
  }
  normalize(out);
  return out;
}

Polygon translated(const Polygon& poly, double dx, double dy) {
  Polygon out = poly;
  for (Point& p : out.exterior) p = {p.x + dx, p.y + dy};
  for (Ring& hole : out.holes) {
    for (Point& p : hole) p = {p.x + dx, p.y + dy};
  }
  return out;
}

double polygon_iou(const Polygon& a, const Polygon& b) {
  const Bounds ba = polygon_bounds(a);
  const Bounds bb = polygon_bounds(b);
  if (!ba.intersects(bb)) return 0.0;
  // Work relative to a shared origin; world coordinates are large.
  const double ox = std::min(ba.min_x, bb.min_x);
  const double oy = std::min(ba.min_y, bb.min_y);
  const auto pa = detail::to_boost(translated(a, -ox, -oy));
  const auto pb = detail::to_boost(translated(b, -ox, -oy));
  detail::BMultiPolygon inter;
  detail::bg::intersection(pa, pb, inter);
  const double inter_area = detail::bg::area(inter);
  const double uni = detail::bg::area(pa) + detail::bg::area(pb) - inter_area;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter_area / uni, 0.0, 1.0);
}

bool intersects_bounds(const Polygon& poly, const Bounds& bounds) {
  if (!polygon_bounds(poly).intersects(bounds)) return false;
  const double ox = bounds.min_x;
  const double oy = bounds.min_y;
  const detail::bg::model::box<detail::BPoint> box(
      {0.0, 0.0}, {bounds.max_x - ox, bounds.max_y - oy});
  return detail::bg::intersects(detail::to_boost(translated(poly, -ox, -oy)), box);
}

Polygon box_polygon(const PixelBox& box, CoordSpace space) {
  Polygon poly;
  poly.space = space;
  poly.exterior = {{box.x0, box.y0}, {box.x1, box.y0}, {box.x1, box.y1},
                   {box.x0, box.y1}, {box.x0, box.y0}};
  normalize(poly);
  return poly;
}

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return std::hypot(p.x - a.x, p.y - a.y);
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Douglas-Peucker over pts[first..last], marking survivors in `keep`.
void douglas_peucker(const std::vector<Point>& pts, std::size_t first,
                     std::size_t last, double tol, std::vector<char>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{first, last}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi <= lo + 1) continue;
    double worst = -1.0;
    std::size_t worst_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = point_segment_distance(pts[i], pts[lo], pts[hi]);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > tol) {
      keep[worst_i] = 1;
      stack.emplace_back(lo, worst_i);
      stack.emplace_back(worst_i, hi);
    }
  }
}

// Open vertex list without duplicates or exactly collinear vertices.
std::vector<Point> strip_redundant(const Ring& ring) {
  std::vector<Point> pts(ring.begin(), ring.end());
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    std::vector<Point> out;
    out.reserve(pts.size());
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = out.empty() ? pts[(i + n - 1) % n] : out.back();
      const Point& cur = pts[i];
      const Point& next = pts[(i + 1) % n];
      const double cross =
          (cur.x - prev.x) * (next.y - cur.y) - (cur.y - prev.y) * (next.x - cur.x);
      if (cross == 0.0) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    pts = std::move(out);
  }
  return pts;
}

}  // namespace

Ring simplify_ring(const Ring& ring, double tolerance) {
  std::vector<Point> pts = strip_redundant(ring);
  if (pts.size() < 3) return {};
  if (tolerance > 0.0 && pts.size() > 3) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d = std::hypot(pts[i].x - pts[0].x, pts[i].y - pts[0].y);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    // Split the closed ring at vertex 0 and its farthest vertex.
    std::vector<Point> loop(pts);
    loop.push_back(pts[0]);
    std::vector<char> keep(loop.size(), 0);
    keep[0] = keep[far] = keep[loop.size() - 1] = 1;
    douglas_peucker(loop, 0, far, tolerance, keep);
    douglas_peucker(loop, far, loop.size() - 1, tolerance, keep);
    std::vector<Point> kept;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
      if (keep[i]) kept.push_back(loop[i]);
    }
    pts = std::move(kept);
  }
  if (pts.size() < 3) return {};
  Ring out(pts.begin(), pts.end());
  out.push_back(out.front());
  if (signed_ring_area(out) == 0.0) return {};
  return out;
}

}  // namespace fmars::geo
