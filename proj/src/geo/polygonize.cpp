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

// Mask vectorization by tracing pixel-edge boundaries.
//
// Each 4-connected component is traced on its own, so foreground pixels of
// other components never influence its rings. Boundary edges run along pixel
// sides with the component on the left (positive shoelace orientation). At a
// saddle vertex, where two component pixels touch only diagonally, the trace
// turns right, i.e. it joins the two pixels. This keeps the exterior ring
// simple; background pinched off at the saddle becomes a hole that touches
// the exterior in one point, which is still a valid polygon.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "fmars/geo/polygon.hpp"

namespace fmars::geo {
namespace {

struct Component {
  std::vector<int> pixels;  // linear indices, scan order
  int x0, y0, x1, y1;       // inclusive pixel bbox
};

std::vector<Component> label_components(const BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<std::int32_t> label(mask.size(), -1);
  std::vector<Component> comps;
  std::deque<int> queue;
  for (int start = 0; start < static_cast<int>(mask.size()); ++start) {
    if (!mask.data[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    Component comp{{}, w, h, -1, -1};
    label[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const int idx = queue.front();
      queue.pop_front();
      comp.pixels.push_back(idx);
      const int x = idx % w;
      const int y = idx / w;
      comp.x0 = std::min(comp.x0, x);
      comp.y0 = std::min(comp.y0, y);
      comp.x1 = std::max(comp.x1, x);
      comp.y1 = std::max(comp.y1, y);
      const std::array<std::array<int, 2>, 4> nbrs{{{x, y - 1}, {x + 1, y}, {x, y + 1}, {x - 1, y}}};
      for (const auto& [nx, ny] : nbrs) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const int n = ny * w + nx;
        if (mask.data[n] && label[n] < 0) {
          label[n] = id;
          queue.push_back(n);
        }
      }
    }
    std::sort(comp.pixels.begin(), comp.pixels.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

struct Edge {
  int from;  // local corner index
  int to;
  int dx, dy;
  bool used = false;
};

std::vector<Ring> trace_rings(const BinaryMask& mask, const Component& comp) {
  const int w = mask.width;
  const int cw = comp.x1 - comp.x0 + 2;  // corners per row
  const int ch = comp.y1 - comp.y0 + 2;
  // Component membership restricted to the bbox.
  const int bw = cw - 1;
  const int bh = ch - 1;
  std::vector<char> inside(static_cast<std::size_t>(bw) * bh, 0);
  for (int idx : comp.pixels) {
    inside[static_cast<std::size_t>(idx / w - comp.y0) * bw + (idx % w - comp.x0)] = 1;
  }
  auto in = [&](int lx, int ly) {
    return lx >= 0 && ly >= 0 && lx < bw && ly < bh &&
           inside[static_cast<std::size_t>(ly) * bw + lx];
  };
  auto corner = [&](int lx, int ly) { return ly * cw + lx; };

  std::vector<Edge> edges;
  std::vector<std::array<int, 2>> out(static_cast<std::size_t>(cw) * ch, {-1, -1});
  auto add = [&](int fx, int fy, int tx, int ty) {
    const int id = static_cast<int>(edges.size());
    edges.push_back({corner(fx, fy), corner(tx, ty), tx - fx, ty - fy});
    auto& slot = out[corner(fx, fy)];
    (slot[0] < 0 ? slot[0] : slot[1]) = id;
  };
  for (int ly = 0; ly < bh; ++ly) {
    for (int lx = 0; lx < bw; ++lx) {
      if (!in(lx, ly)) continue;
      if (!in(lx, ly - 1)) add(lx, ly, lx + 1, ly);
      if (!in(lx + 1, ly)) add(lx + 1, ly, lx + 1, ly + 1);
      if (!in(lx, ly + 1)) add(lx + 1, ly + 1, lx, ly + 1);
      if (!in(lx - 1, ly)) add(lx, ly + 1, lx, ly);
    }
  }

  std::vector<Ring> rings;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (edges[start].used) continue;
    Ring ring;
    int cur = static_cast<int>(start);
    while (!edges[cur].used) {
      Edge& e = edges[cur];
      e.used = true;
      ring.push_back({static_cast<double>(e.from % cw + comp.x0),
                      static_cast<double>(e.from / cw + comp.y0)});
      const auto& slot = out[e.to];
      int next = slot[0];
      if (slot[1] >= 0) {
        // Saddle: take the right turn, heading (dx,dy) -> (dy,-dx).
        const Edge& a = edges[slot[0]];
        next = (a.dx == e.dy && a.dy == -e.dx) ? slot[0] : slot[1];
      }
      cur = next;
    }
    ring.push_back(ring.front());
    rings.push_back(std::move(ring));
  }
  return rings;
}

Polygon assemble(std::vector<Ring> rings, double tol, double min_hole_area) {
  const auto ext = std::max_element(rings.begin(), rings.end(),
                                    [](const Ring& a, const Ring& b) {
                                      return signed_ring_area(a) < signed_ring_area(b);
                                    });
  Polygon poly;
  poly.space = CoordSpace::kPixel;
  poly.exterior = simplify_ring(*ext, tol);
  if (poly.exterior.empty()) poly.exterior = simplify_ring(*ext, 0.0);
  for (auto it = rings.begin(); it != rings.end(); ++it) {
    if (it == ext) continue;
    if (std::abs(signed_ring_area(*it)) < min_hole_area) continue;
    Ring hole = simplify_ring(*it, tol);
    if (!hole.empty()) poly.holes.push_back(std::move(hole));
  }
  normalize(poly);
  return poly;
}

// Simplification must keep each component recoverable by rasterization.
// When it does not, the tolerance is halved, down to the exact outline.
constexpr double kMinFidelity = 0.99;
constexpr double kMinTolerance = 0.125;

// IoU between the rasterized polygon and the component's own pixels.
double raster_fidelity(const Polygon& poly, const Component& comp, int mask_width) {
  const int bw = comp.x1 - comp.x0 + 1;
  const int bh = comp.y1 - comp.y0 + 1;
  const BinaryMask back = rasterize_polygon(
      translated(poly, -comp.x0, -comp.y0), bh, bw);
  std::vector<char> mine(back.size(), 0);
  for (int idx : comp.pixels) {
    mine[static_cast<std::size_t>(idx / mask_width - comp.y0) * bw + (idx % mask_width - comp.x0)] = 1;
  }
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    inter += back.data[i] && mine[i];
    uni += back.data[i] || mine[i];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::vector<Polygon> polygonize_mask(const BinaryMask& mask,
                                     const PolygonizeOptions& opts) {
  std::vector<Polygon> result;
  if (mask.width <= 0 || mask.height <= 0) return result;
  for (const Component& comp : label_components(mask)) {
    if (static_cast<double>(comp.pixels.size()) < opts.min_area_px) continue;
    std::vector<Ring> rings = trace_rings(mask, comp);
    Polygon poly;
    for (double tol = opts.simplify_tol_px;; tol /= 2) {
      if (tol < kMinTolerance) tol = 0.0;
      poly = assemble(rings, tol, opts.min_area_px);
      if (tol == 0.0) break;
      if (validity_error(poly).empty() && raster_fidelity(poly, comp, mask.width) >= kMinFidelity) {
        break;
      }
    }
    result.push_back(std::move(poly));
  }
  return result;
}

}  // namespace fmars::geo
