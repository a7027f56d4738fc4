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


#include "fmars/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "fmars/annotate/prompts.hpp"
#include "fmars/annotate/tiling.hpp"
#include "fmars/backends/hash.hpp"
#include "fmars/core/error.hpp"

namespace fmars::cli {
namespace {

using nlohmann::json;

class ScenarioSource final : public ingest::PixelSource {
 public:
  void read(int x0, int y0, int w, int h, std::uint8_t* dst,
            std::size_t dst_stride) const override {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        scenario_pixel(x0 + c, y0 + r, dst + static_cast<std::size_t>(r) * dst_stride + 3 * c);
      }
    }
  }
};

// 10 m square centered on pixel (cx, cy), rotated by `deg` degrees.
geo::Polygon footprint(const geo::AffineTransform& t, double cx, double cy, double deg) {
  const geo::Point c = geo::pixel_to_world(t, {cx, cy});
  const double a = deg * std::numbers::pi / 180.0;
  geo::Polygon p;
  p.space = geo::CoordSpace::kWorld;
  for (auto [u, v] : {std::pair{-5.0, -5.0}, {5.0, -5.0}, {5.0, 5.0}, {-5.0, 5.0}}) {
    p.exterior.push_back({c.x + u * std::cos(a) - v * std::sin(a),
                          c.y + u * std::sin(a) + v * std::cos(a)});
  }
  geo::normalize(p);
  return p;
}

// Rectangle of pixels the mock segmenter keeps for an image-space box.
geo::Polygon mock_rect(const geo::PixelBox& b) {
  const auto first = [](double v) { return std::ceil(v - 0.5); };
  return geo::box_polygon({first(b.x0) + 1, first(b.y0) + 1, first(b.x1) - 1, first(b.y1) - 1},
                          geo::CoordSpace::kPixel);
}

json ring_json(const geo::Ring& r) {
  json out = json::array();
  for (const geo::Point& p : r) out.push_back({p.x, p.y});
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace

void scenario_pixel(int x, int y, std::uint8_t rgb[3]) {
  rgb[0] = static_cast<std::uint8_t>((x + 2 * y) % 251);
  rgb[1] = static_cast<std::uint8_t>((3 * x + y) % 241);
  rgb[2] = static_cast<std::uint8_t>((x * y) % 239);
}

ingest::GeoRaster scenario_raster(const Scenario& s) {
  return ingest::GeoRaster(s.width, s.height, s.transform, std::make_shared<ScenarioSource>());
}

Scenario make_scenario() {
  Scenario s;
  s.config.tiling = {512, 128};
  s.config.workers = 1;
  const auto& t = s.transform;

  const std::pair<geo::Point, double> buildings[] = {
      {{200, 200}, 0.0}, {{560, 300}, 30.0}, {{800, 850}, 0.0}};
  for (std::size_t i = 0; i < std::size(buildings); ++i) {
    const auto& [c, deg] = buildings[i];
    geo::Polygon p = footprint(t, c.x, c.y, deg);
    s.expected_buildings.push_back(geo::to_world(mock_rect(annotate::pixel_aabb(p, t)), t));
    s.footprints.features.push_back({std::move(p), "b" + std::to_string(i + 1)});
  }

  // 200 m east-west road along pixel row 700.
  const geo::Point a = geo::pixel_to_world(t, {100, 700});
  s.roads.polylines.push_back({a, {a.x + 200.0, a.y}});
  const double r = s.config.road_radius_m;
  s.road_area_m2 = 2 * r * 200.0 + std::numbers::pi * r * r;

  // Vegetation: box A is seen by tiles 0 and 1 (scores 0.8 / 0.7), box B by
  // tile 8 only. Coordinates in the fixture are tile-local.
  const ingest::GeoRaster raster = scenario_raster(s);
  const auto tiles = annotate::plan_tiles(s.width, s.height, s.config.tiling);
  auto add = [&](std::size_t tile, geo::PixelBox img_box, double score) {
    const annotate::TileWindow& tw = tiles.at(tile);
    const auto win = raster.read_window(tw.x0, tw.y0, tw.width, tw.height);
    s.detector_fixture[backends::tile_hash(win.pixels)].push_back(
        {{img_box.x0 - tw.x0, img_box.y0 - tw.y0, img_box.x1 - tw.x0, img_box.y1 - tw.y0},
         score, "bushes"});
  };
  const geo::PixelBox veg_a{420, 100, 470, 150};
  const geo::PixelBox veg_b{700, 600, 760, 640};
  add(0, veg_a, 0.8);
  add(1, veg_a, 0.7);
  add(8, veg_b, 0.6);
  return s;
}

void write_scenario(const Scenario& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  ingest::write_fixture_raster(dir / "raster.json", s.width, s.height, s.transform,
                               [](int row, std::span<std::uint8_t> rgb) {
                                 for (std::size_t x = 0; x < rgb.size() / 3; ++x) {
                                   scenario_pixel(static_cast<int>(x), row, &rgb[3 * x]);
                                 }
                               });
  json fps = json::array();
  for (const ingest::Footprint& f : s.footprints.features) {
    fps.push_back({{"type", "Feature"},
                   {"id", f.source_id},
                   {"properties", json::object()},
                   {"geometry",
                    {{"type", "Polygon"}, {"coordinates", {ring_json(f.polygon.exterior)}}}}});
  }
  write_text(dir / "footprints.geojson",
             json{{"type", "FeatureCollection"}, {"features", fps}}.dump(1) + "\n");
  json roads = json::array();
  for (const ingest::Polyline& l : s.roads.polylines) {
    roads.push_back({{"type", "Feature"},
                     {"properties", json::object()},
                     {"geometry", {{"type", "LineString"}, {"coordinates", ring_json(l)}}}});
  }
  write_text(dir / "roads.geojson",
             json{{"type", "FeatureCollection"}, {"features", roads}}.dump(1) + "\n");
  write_text(dir / "detector_fixture.json",
             backends::detector_fixture_to_json(s.detector_fixture).dump(1) + "\n");
  const json config{
      {"paths",
       {{"raster", "raster.json"},
        {"footprints", "footprints.geojson"},
        {"roads", "roads.geojson"},
        {"output", "annotations.geojson"},
        {"detector_fixture", "detector_fixture.json"}}},
      {"tiling", {{"size", s.config.tiling.size}, {"overlap", s.config.tiling.overlap}}},
      {"backend", {{"kind", "mock"}}}};
  write_text(dir / "config.json", config.dump(2) + "\n");
}

}  // namespace fmars::cli
