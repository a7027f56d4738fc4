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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"
#include "support/scratch_dir.hpp"

namespace fmars::ingest {
namespace {

using nlohmann::json;

json square(double x, double y, double s) {
  return json::array({json::array({{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}, {x, y}})});
}

json feature(const json& geometry, const json& id = nullptr) {
  json f{{"type", "Feature"}, {"geometry", geometry}, {"properties", json::object()}};
  if (!id.is_null()) f["id"] = id;
  return f;
}

json collection(std::vector<json> features) {
  return {{"type", "FeatureCollection"}, {"features", features}};
}

const geo::Bounds kExtent{0, 0, 100, 100};

TEST(Footprints, FiltersByExtent) {
  const json fc = collection({
      feature({{"type", "Polygon"}, {"coordinates", square(10, 10, 5)}}, "a"),
      feature({{"type", "Polygon"}, {"coordinates", square(98, 98, 5)}}, "b"),
      feature({{"type", "Polygon"}, {"coordinates", square(200, 10, 5)}}, "c"),
  });
  const FootprintSet set = parse_footprints(fc, kExtent);
  ASSERT_EQ(set.features.size(), 2u);
  EXPECT_EQ(set.features[0].source_id, "a");
  EXPECT_EQ(set.features[1].source_id, "b");
  // Kept whole, not clipped.
  EXPECT_DOUBLE_EQ(geo::polygon_area(set.features[1].polygon), 25.0);
  EXPECT_EQ(set.features[0].polygon.space, geo::CoordSpace::kWorld);
}

TEST(Footprints, EmptyCollection) {
  const FootprintSet set = parse_footprints(collection({}), kExtent);
  EXPECT_TRUE(set.features.empty());
  EXPECT_EQ(set.invalid_count, 0u);
}

TEST(Footprints, MultiPolygonIsExploded) {
  json coords = json::array({square(1, 1, 2), square(50, 50, 3)});
  const FootprintSet set =
      parse_footprints(collection({feature({{"type", "MultiPolygon"}, {"coordinates", coords}}, 7)}),
                       kExtent);
  ASSERT_EQ(set.features.size(), 2u);
  EXPECT_EQ(set.features[0].source_id, "7/0");
  EXPECT_DOUBLE_EQ(geo::polygon_area(set.features[1].polygon), 9.0);
}

TEST(Footprints, ClockwiseInputIsNormalized) {
  json cw = json::array({json::array({{0, 0}, {0, 4}, {4, 4}, {4, 0}, {0, 0}})});
  const FootprintSet set =
      parse_footprints(collection({feature({{"type", "Polygon"}, {"coordinates", cw}})}), kExtent);
  ASSERT_EQ(set.features.size(), 1u);
  EXPECT_GT(geo::signed_ring_area(set.features[0].polygon.exterior), 0);
}

TEST(Footprints, InvalidAndNonPolygonCounted) {
  json bowtie = json::array({json::array({{0, 0}, {4, 4}, {4, 0}, {0, 4}, {0, 0}})});
  json open_ring = json::array({json::array({{0, 0}, {4, 0}, {4, 4}})});
  const FootprintSet set = parse_footprints(
      collection({feature({{"type", "Polygon"}, {"coordinates", bowtie}}),
                  feature({{"type", "Polygon"}, {"coordinates", open_ring}}),
                  feature({{"type", "Polygon"}, {"coordinates", "nope"}}),
                  feature({{"type", "Point"}, {"coordinates", {1, 1}}}),
                  feature(nullptr),
                  feature({{"type", "Polygon"}, {"coordinates", square(1, 1, 1)}})}),
      kExtent);
  EXPECT_EQ(set.features.size(), 1u);
  EXPECT_EQ(set.invalid_count, 3u);
  EXPECT_EQ(set.skipped_count, 2u);
}

TEST(Footprints, MalformedInputThrows) {
  testing::ScratchDir dir;
  testing::write_file(dir / "bad.geojson", "{\"type\": \"FeatureCollection\", ");
  EXPECT_THROW(load_footprints(dir / "bad.geojson", kExtent), InputError);
  testing::write_file(dir / "feat.geojson", R"({"type":"Feature"})");
  EXPECT_THROW(load_footprints(dir / "feat.geojson", kExtent), InputError);
  EXPECT_THROW(load_footprints(dir / "missing.geojson", kExtent), InputError);
}

TEST(Roads, LineInsideIsUnchanged) {
  const json line{{"type", "LineString"}, {"coordinates", {{10, 10}, {20, 30}, {50, 30}}}};
  const RoadGraph g = parse_roads(collection({feature(line)}), kExtent);
  ASSERT_EQ(g.polylines.size(), 1u);
  const Polyline expected{{10, 10}, {20, 30}, {50, 30}};
  EXPECT_EQ(g.polylines[0], expected);
}

TEST(Roads, CrossingLineIsCutAtBoundary) {
  // Segment (50,50)->(150,75) meets x=100 at t=0.5, y=62.5.
  const json line{{"type", "LineString"}, {"coordinates", {{50, 50}, {150, 75}}}};
  const RoadGraph g = parse_roads(collection({feature(line)}), kExtent);
  ASSERT_EQ(g.polylines.size(), 1u);
  ASSERT_EQ(g.polylines[0].size(), 2u);
  EXPECT_EQ(g.polylines[0][1].x, 100.0);
  EXPECT_DOUBLE_EQ(g.polylines[0][1].y, 62.5);
}

TEST(Roads, EmptyAndSkipped) {
  EXPECT_TRUE(parse_roads(collection({}), kExtent).polylines.empty());
  const RoadGraph g = parse_roads(
      collection({feature({{"type", "Polygon"}, {"coordinates", square(1, 1, 1)}}),
                  feature({{"type", "LineString"}, {"coordinates", {{5, 5}, {5, 5}}}})}),
      kExtent);
  EXPECT_TRUE(g.polylines.empty());
  EXPECT_EQ(g.skipped_count, 1u);
}

TEST(Roads, MultiLineAndReentry) {
  const json multi{{"type", "MultiLineString"},
                   {"coordinates", {{{10, 10}, {20, 10}}, {{-10, 50}, {50, 50}, {50, 150}, {60, 50}}}}};
  const RoadGraph g = parse_roads(collection({feature(multi)}), kExtent);
  ASSERT_EQ(g.polylines.size(), 3u);
  EXPECT_EQ(g.polylines[1].front().x, 0.0);
  EXPECT_EQ(g.polylines[1].back().y, 100.0);
  EXPECT_EQ(g.polylines[2].front().y, 100.0);
  EXPECT_EQ(g.polylines[2].back(), (geo::Point{60, 50}));
}

double segment_point_distance(geo::Point p, geo::Point a, geo::Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy);
}

TEST(Roads, ClippingProperties) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-80, 180);
  const geo::Bounds box{0, 0, 100, 100};
  for (int iter = 0; iter < 500; ++iter) {
    Polyline line;
    const int n = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) line.push_back({coord(rng), coord(rng)});
    for (const Polyline& piece : clip_polyline(line, box)) {
      ASSERT_GE(piece.size(), 2u);
      for (std::size_t i = 0; i < piece.size(); ++i) {
        const geo::Point p = piece[i];
        ASSERT_GE(p.x, box.min_x);
        ASSERT_LE(p.x, box.max_x);
        ASSERT_GE(p.y, box.min_y);
        ASSERT_LE(p.y, box.max_y);
        if (i > 0) {
          ASSERT_FALSE(piece[i - 1] == p);
        }
        // Every output point lies on the input polyline.
        double best = 1e300;
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
          best = std::min(best, segment_point_distance(p, line[k], line[k + 1]));
        }
        ASSERT_LT(best, 1e-9);
      }
      // Endpoints are either original vertices or on the boundary.
      for (const geo::Point& e : {piece.front(), piece.back()}) {
        const bool on_edge = e.x == box.min_x || e.x == box.max_x || e.y == box.min_y ||
                             e.y == box.max_y;
        const bool vertex = std::find(line.begin(), line.end(), e) != line.end();
        ASSERT_TRUE(on_edge || vertex);
      }
    }
  }
}

}  // namespace
}  // namespace fmars::ingest
