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
#include <random>

#include <gtest/gtest.h>

#include "fmars/annotate/output.hpp"
#include "fmars/annotate/semantic.hpp"
#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"
#include "support/scratch_dir.hpp"

namespace fmars::annotate {
namespace {

geo::Polygon rect(double x0, double y0, double x1, double y1) {
  geo::Polygon p = geo::box_polygon({x0, y0, x1, y1}, geo::CoordSpace::kWorld);
  return p;
}

InstanceAnnotation inst(geo::Polygon g, ClassLabel c, double conf, std::optional<std::size_t> tile,
                        Provenance p = Provenance::kFootprintSegmenter) {
  return {std::move(g), c, conf, p, tile};
}

TEST(Dedupe, DuplicateFromOverlappingTiles) {
  const auto out = dedupe_across_tiles({inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.8, 1),
                                        inst(rect(0.5, 0, 10.5, 10), ClassLabel::kBuildings, 0.9, 0)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].confidence, 0.9);
  EXPECT_EQ(out[0].source_tile, 0u);
}

TEST(Dedupe, DisjointUnchanged) {
  std::vector<InstanceAnnotation> in{inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.8, 0),
                                     inst(rect(20, 0, 30, 10), ClassLabel::kBuildings, 0.9, 1)};
  auto out = dedupe_across_tiles(in);
  sort_canonical(in);
  EXPECT_EQ(out, in);
}

TEST(Dedupe, TieKeepsLowerTileIndex) {
  const auto out = dedupe_across_tiles({inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 5),
                                        inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 2)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].source_tile, 2u);
}

TEST(Dedupe, OnlySameClassDifferentTile) {
  const auto same_tile = dedupe_across_tiles(
      {inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 3),
       inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.8, 3)});
  EXPECT_EQ(same_tile.size(), 2u);
  const auto other_class = dedupe_across_tiles(
      {inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 3),
       inst(rect(0, 0, 10, 10), ClassLabel::kHighVegetation, 0.8, 4)});
  EXPECT_EQ(other_class.size(), 2u);
  const auto low_iou = dedupe_across_tiles(
      {inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 3),
       inst(rect(4, 0, 14, 10), ClassLabel::kBuildings, 0.8, 4)});
  EXPECT_EQ(low_iou.size(), 2u);
  const auto roads = dedupe_across_tiles(
      {inst(rect(0, 0, 10, 10), ClassLabel::kRoads, 1.0, std::nullopt, Provenance::kRoadBuffer),
       inst(rect(0, 0, 10, 10), ClassLabel::kRoads, 1.0, std::nullopt, Provenance::kRoadBuffer)});
  EXPECT_EQ(roads.size(), 2u);
}

TEST(Dedupe, IndependentOfInputOrder) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> pos(0, 50), conf(0.5, 1.0);
  std::vector<InstanceAnnotation> in;
  for (int i = 0; i < 40; ++i) {
    const double x = pos(rng), y = pos(rng);
    in.push_back(inst(rect(x, y, x + 8, y + 8), ClassLabel::kBuildings,
                      std::round(conf(rng) * 10) / 10, static_cast<std::size_t>(rng() % 4)));
  }
  const auto ref = dedupe_across_tiles(in);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(in.begin(), in.end(), rng);
    ASSERT_EQ(dedupe_across_tiles(in), ref);
  }
}

TEST(Output, OrderAndProperties) {
  const std::string text = to_geojson(
      {inst(rect(50, 0, 60, 10), ClassLabel::kBuildings, 0.9, 0),
       inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 0),
       inst(rect(100, 0, 110, 10), ClassLabel::kRoads, 1.0, std::nullopt, Provenance::kRoadBuffer)});
  const auto doc = nlohmann::json::parse(text);
  ASSERT_EQ(doc["features"].size(), 3u);
  EXPECT_EQ(doc["features"][0]["properties"]["class"], "roads");
  EXPECT_EQ(doc["features"][0]["properties"]["class_id"], 1);
  EXPECT_EQ(doc["features"][0]["properties"]["provenance"], "road-buffer");
  EXPECT_EQ(doc["features"][0]["properties"]["confidence"], 1.0);
  EXPECT_EQ(doc["features"][1]["properties"]["class"], "buildings");
  EXPECT_EQ(doc["features"][1]["geometry"]["coordinates"][0][0][0], 0.0);
  EXPECT_EQ(doc["features"][2]["geometry"]["coordinates"][0][0][0], 50.0);
  EXPECT_EQ(doc["features"][2]["properties"]["provenance"], "footprint+segmenter");
}

TEST(Output, EmptyCollectionIsValid) {
  const auto doc = nlohmann::json::parse(to_geojson({}));
  EXPECT_EQ(doc["type"], "FeatureCollection");
  EXPECT_TRUE(doc["features"].empty());
}

TEST(Output, GeometryRoundTripsAtNineDecimals) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> pos(0, 1000);
  std::vector<InstanceAnnotation> in;
  for (int i = 0; i < 30; ++i) {
    const double x = 500000 + pos(rng), y = 4490000 + pos(rng);
    geo::Polygon p = rect(x, y, x + pos(rng) / 10 + 1, y + pos(rng) / 10 + 1);
    p.holes.push_back({{x + 0.25, y + 0.25}, {x + 0.25, y + 0.75}, {x + 0.75, y + 0.75},
                       {x + 0.75, y + 0.25}, {x + 0.25, y + 0.25}});
    in.push_back(inst(p, ClassLabel::kHighVegetation, 0.9, 0, Provenance::kTextSegmenter));
  }
  testing::ScratchDir dir;
  merge_and_write(in, dir / "out.geojson");
  const auto back = ingest::load_footprints(dir / "out.geojson", {0, 0, 1e7, 1e7});
  ASSERT_EQ(back.features.size(), in.size());
  sort_canonical(in);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& a = in[i].geometry;
    const auto& b = back.features[i].polygon;
    ASSERT_EQ(a.exterior.size(), b.exterior.size());
    ASSERT_EQ(b.holes.size(), 1u);
    for (std::size_t k = 0; k < a.exterior.size(); ++k) {
      EXPECT_NEAR(a.exterior[k].x, b.exterior[k].x, 5e-10 + 1e-9);
      EXPECT_NEAR(a.exterior[k].y, b.exterior[k].y, 5e-10 + 1e-9);
    }
  }
}

TEST(Output, LoadAnnotationsRoundTrip) {
  std::vector<InstanceAnnotation> in{
      inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 0),
      inst(rect(20, 0, 30, 10), ClassLabel::kHighVegetation, 0.85, 1, Provenance::kTextSegmenter),
      inst(rect(40, 0, 50, 4), ClassLabel::kRoads, 1.0, 0, Provenance::kRoadBuffer)};
  testing::ScratchDir dir;
  merge_and_write(in, dir / "a.geojson");
  const auto back = load_annotations(dir / "a.geojson");
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(to_geojson(back), to_geojson(in));
  for (const auto& b : back) EXPECT_FALSE(b.source_tile.has_value());
  testing::write_file(dir / "bad.geojson", R"({"type":"FeatureCollection","features":[{}]})");
  EXPECT_THROW(load_annotations(dir / "bad.geojson"), InputError);
  EXPECT_THROW(load_annotations(dir / "missing.geojson"), InputError);
}

TEST(Output, DeterministicAndUnwritable) {
  std::vector<InstanceAnnotation> in{inst(rect(0, 0, 10, 10), ClassLabel::kBuildings, 0.9, 0),
                                     inst(rect(20, 0, 30, 10), ClassLabel::kBuildings, 0.8, 1)};
  const std::string a = to_geojson(in);
  std::reverse(in.begin(), in.end());
  EXPECT_EQ(to_geojson(in), a);
  EXPECT_THROW(merge_and_write(in, "/nonexistent-dir/x.geojson"), InputError);
  EXPECT_THROW(to_geojson({inst(rect(0, 0, 1, 1), ClassLabel::kBackground, 1, 0)}), InputError);
}

const geo::AffineTransform kUnit = geo::AffineTransform::north_up(0, 100, 1);

// World polygon covering pixel columns [c0,c1) and rows [r0,r1).
geo::Polygon pixel_rect(double c0, double r0, double c1, double r1) {
  return geo::to_world(geo::box_polygon({c0, r0, c1, r1}, geo::CoordSpace::kPixel), kUnit);
}

TEST(Semantic, PrecedenceAndBackground) {
  const std::vector<InstanceAnnotation> in{
      inst(pixel_rect(0, 0, 6, 6), ClassLabel::kBuildings, 0.9, 0),
      inst(pixel_rect(4, 4, 10, 10), ClassLabel::kRoads, 1.0, std::nullopt),
      inst(pixel_rect(8, 0, 12, 12), ClassLabel::kHighVegetation, 0.9, 0)};
  const auto lab = render_semantic(in, {0, 0, 16, 16}, kUnit);
  EXPECT_EQ(lab.at(5, 5), 3);   // building over road
  EXPECT_EQ(lab.at(9, 9), 1);   // road over vegetation
  EXPECT_EQ(lab.at(11, 1), 2);
  EXPECT_EQ(lab.at(14, 14), 0);
  // Input order does not matter.
  std::vector<InstanceAnnotation> rev(in.rbegin(), in.rend());
  EXPECT_EQ(render_semantic(rev, {0, 0, 16, 16}, kUnit), lab);
}

TEST(Semantic, RendererWindowsAgreeWithWholeRender) {
  const std::vector<InstanceAnnotation> in{
      inst(pixel_rect(1, 1, 9, 7), ClassLabel::kBuildings, 0.9, 0),
      inst(pixel_rect(5, 3, 15, 12), ClassLabel::kHighVegetation, 0.9, 0)};
  const SemanticRenderer renderer(in, kUnit);
  const auto whole = renderer.render({0, 0, 16, 16});
  for (const PixelWindow w : {PixelWindow{0, 0, 8, 8}, PixelWindow{8, 0, 8, 8},
                              PixelWindow{0, 8, 8, 8}, PixelWindow{8, 8, 8, 8}}) {
    const auto part = renderer.render(w);
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) ASSERT_EQ(part.at(x, y), whole.at(w.x0 + x, w.y0 + y));
    }
  }
}

TEST(Semantic, MatchesPerInstanceRasterization) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> pos(-5, 40);
  for (int iter = 0; iter < 20; ++iter) {
    const double x = pos(rng), y = pos(rng);
    const geo::Polygon g = pixel_rect(x, y, x + 7.3, y + 4.6);
    const PixelWindow win{3, 5, 32, 24};
    const auto lab = render_semantic(std::vector{inst(g, ClassLabel::kHighVegetation, 0.9, 0)},
                                     win, kUnit);
    const auto mask = geo::rasterize_polygon(
        geo::translated(geo::to_pixel(g, kUnit), -win.x0, -win.y0), win.height, win.width);
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
      ASSERT_EQ(lab.data[i], mask.data[i] ? 2 : 0);
    }
  }
}

}  // namespace
}  // namespace fmars::annotate
