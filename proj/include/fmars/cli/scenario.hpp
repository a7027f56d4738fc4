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


// Synthetic end-to-end scenario for mock-backed runs: a 1024 x 1024 RGB
// raster at 0.3 m, three 10 m building footprints (one rotated), one 200 m
// straight road and two vegetation detections, one of which is reported by
// two overlapping tiles.

#pragma once

#include <filesystem>
#include <vector>

#include "fmars/annotate/pipeline.hpp"
#include "fmars/backends/mock.hpp"
#include "fmars/ingest/raster.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::cli {

struct Scenario {
  int width = 1024;
  int height = 1024;
  geo::AffineTransform transform = geo::AffineTransform::north_up(500000, 4500000, 0.3);
  ingest::FootprintSet footprints;
  ingest::RoadGraph roads;
  backends::DetectorFixture detector_fixture;
  annotate::AnnotateConfig config;  // 512 px tiles, 128 px overlap

  /// Building polygons the mock segmenter must produce (world coords).
  std::vector<geo::Polygon> expected_buildings;
  /// Analytic capsule area of the road in square meters.
  double road_area_m2 = 0.0;
};

/// Pixel value of the synthetic raster.
void scenario_pixel(int x, int y, std::uint8_t rgb[3]);

ingest::GeoRaster scenario_raster(const Scenario& s);
Scenario make_scenario();

/// Writes raster.json/raster.rgb, footprints.geojson, roads.geojson,
/// detector_fixture.json and config.json (output: annotations.geojson).
void write_scenario(const Scenario& s, const std::filesystem::path& dir);

}  // namespace fmars::cli
