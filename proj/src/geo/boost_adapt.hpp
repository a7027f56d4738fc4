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

// Conversions between fmars::geo types and Boost.Geometry models.

#pragma once

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "fmars/geo/polygon.hpp"

namespace fmars::geo::detail {

namespace bg = boost::geometry;

using BPoint = bg::model::d2::point_xy<double>;
// Counter-clockwise exteriors, closed rings: same conventions as Polygon.
using BPolygon = bg::model::polygon<BPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BMultiPolygon = bg::model::multi_polygon<BPolygon>;
using BLine = bg::model::linestring<BPoint>;

inline BPolygon to_boost(const Polygon& poly) {
  BPolygon out;
  for (const Point& p : poly.exterior) out.outer().emplace_back(p.x, p.y);
  out.inners().resize(poly.holes.size());
  for (std::size_t i = 0; i < poly.holes.size(); ++i) {
    for (const Point& p : poly.holes[i]) out.inners()[i].emplace_back(p.x, p.y);
  }
  return out;
}

inline Polygon from_boost(const BPolygon& poly, CoordSpace space) {
  Polygon out;
  out.space = space;
  for (const BPoint& p : poly.outer()) out.exterior.push_back({p.x(), p.y()});
  for (const auto& inner : poly.inners()) {
    Ring ring;
    for (const BPoint& p : inner) ring.push_back({p.x(), p.y()});
    out.holes.push_back(std::move(ring));
  }
  return out;
}

}  // namespace fmars::geo::detail
