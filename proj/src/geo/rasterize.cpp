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
#include <vector>

#include "fmars/geo/polygon.hpp"

namespace fmars::geo {
namespace {

// Even-odd scanline fill sampled at pixel centers. Holes lie inside the
// exterior, so even-odd over all rings equals "inside exterior and outside
// every hole".
template <typename SetPixel>
void scan_fill(const Polygon& poly, int height, int width, SetPixel&& set) {
  if (height <= 0 || width <= 0 || poly.exterior.size() < 3) return;
  const Bounds b = polygon_bounds(poly);
  const int row_lo = std::max(0, static_cast<int>(std::floor(b.min_y - 0.5)));
  const int row_hi =
      std::min(height - 1, static_cast<int>(std::ceil(b.max_y - 0.5)));
  std::vector<double> xs;
  for (int row = row_lo; row <= row_hi; ++row) {
    const double yc = row + 0.5;
    xs.clear();
    auto add_ring = [&](const Ring& ring) {
      for (std::size_t i = 0, n = ring.size(); i + 1 < n; ++i) {
        const Point& p = ring[i];
        const Point& q = ring[i + 1];
        if ((p.y > yc) != (q.y > yc)) {
          xs.push_back(p.x + (yc - p.y) * (q.x - p.x) / (q.y - p.y));
        }
      }
    };
    add_ring(poly.exterior);
    for (const Ring& hole : poly.holes) add_ring(hole);
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixel col is inside when xs[k] <= col + 0.5 < xs[k + 1].
      const int c0 = std::max(0, static_cast<int>(std::ceil(xs[k] - 0.5)));
      const int c1 =
          std::min(width, static_cast<int>(std::ceil(xs[k + 1] - 0.5)));
      for (int col = c0; col < c1; ++col) set(col, row);
    }
  }
}

}  // namespace

BinaryMask rasterize_polygon(const Polygon& poly, int height, int width) {
  BinaryMask mask(std::max(width, 0), std::max(height, 0));
  scan_fill(poly, height, width, [&](int x, int y) { mask.at(x, y) = 1; });
  return mask;
}

void rasterize_into(const Polygon& poly, Grid8& grid, std::uint8_t value) {
  scan_fill(poly, grid.height, grid.width,
            [&](int x, int y) { grid.at(x, y) = value; });
}

}  // namespace fmars::geo
