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

// GeoJSON (RFC 7946) readers for building footprints and road graphs.
// Inputs must already be in the raster's CRS.

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fmars/geo/polygon.hpp"
#include "json.hpp"

namespace fmars::ingest {

struct Footprint {
  geo::Polygon polygon;  // world coordinates
  std::string source_id;
};

struct FootprintSet {
  std::vector<Footprint> features;
  std::size_t invalid_count = 0;  // polygons failing validity checks
  std::size_t skipped_count = 0;  // non-polygon geometries
};

using Polyline = std::vector<geo::Point>;

struct RoadGraph {
  std::vector<Polyline> polylines;  // each >= 2 points, no zero-length segments
  std::size_t skipped_count = 0;    // non-line geometries
};

/// Polygons and MultiPolygon parts intersecting `extent`, kept whole.
/// Throws InputError on malformed JSON or a non-FeatureCollection.
FootprintSet load_footprints(const std::filesystem::path& path,
                             const geo::Bounds& extent);
FootprintSet parse_footprints(const nlohmann::json& collection,
                              const geo::Bounds& extent);

/// LineStrings and MultiLineString parts, clipped to `extent` per segment.
RoadGraph load_roads(const std::filesystem::path& path, const geo::Bounds& extent);
RoadGraph parse_roads(const nlohmann::json& collection, const geo::Bounds& extent);

/// Liang-Barsky clipping of a polyline to a rectangle. A line leaving and
/// re-entering the rectangle yields several pieces. Clipped endpoints lie
/// exactly on the rectangle boundary.
std::vector<Polyline> clip_polyline(std::span<const geo::Point> line,
                                    const geo::Bounds& extent);

/// Reads and parses a JSON document; InputError on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace fmars::ingest
