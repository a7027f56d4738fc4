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

#include "boost_adapt.hpp"
#include "fmars/core/error.hpp"
#include "fmars/geo/polygon.hpp"

namespace fmars::geo {

Polygon buffer_polyline(std::span<const Point> line, double radius,
                        int points_per_circle) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("buffer radius must be positive");
  }
  if (points_per_circle < 16) {
    throw InputError("buffer arcs need at least 16 segments per circle");
  }
  // Buffer relative to the first vertex so that the arc vertices are
  // computed with small magnitudes, then shift back.
  detail::BLine ls;
  const Point origin = line.empty() ? Point{} : line.front();
  for (const Point& p : line) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("polyline has non-finite coordinates");
    }
    const detail::BPoint q(p.x - origin.x, p.y - origin.y);
    if (ls.empty() || !detail::bg::equals(ls.back(), q)) ls.push_back(q);
  }
  if (ls.size() < 2) {
    throw InputError("cannot buffer a polyline with fewer than two distinct points");
  }

  namespace strategy = detail::bg::strategy::buffer;
  detail::BMultiPolygon result;
  detail::bg::buffer(ls, result, strategy::distance_symmetric<double>(radius),
                     strategy::side_straight(),
                     strategy::join_round(points_per_circle),
                     strategy::end_round(points_per_circle),
                     strategy::point_circle(points_per_circle));
  if (result.empty()) throw InputError("polyline buffer is empty");

  // A connected polyline buffers to one polygon; keep the largest if the
  // library ever splits it.
  const auto largest = std::max_element(
      result.begin(), result.end(), [](const auto& a, const auto& b) {
        return detail::bg::area(a) < detail::bg::area(b);
      });
  Polygon out = translated(detail::from_boost(*largest, CoordSpace::kWorld),
                           origin.x, origin.y);
  normalize(out);
  return out;
}

}  // namespace fmars::geo
