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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Mock backends only.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "fmars/annotate/filter.hpp"
#include "fmars/annotate/output.hpp"
#include "fmars/annotate/pipeline.hpp"
#include "fmars/cli/scenario.hpp"
#include "fmars/core/log.hpp"
#include "fmars/dataset/sampling.hpp"
#include "fmars/dataset/tiles.hpp"
#include "fmars/eval/metrics.hpp"
#include "fmars/eval/softmax.hpp"
#include "fmars/geo/polygon.hpp"
#include "fmars/geo/rle.hpp"
#include "support/filter_oracle.hpp"
#include "support/geo_fixtures.hpp"
#include "support/scratch_dir.hpp"

namespace fmars {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Per-class percentages and the published means for one table row.
struct TableRow {
  const char* name;
  std::array<double, 4> acc;
  std::array<double, 4> iou;
  double m_acc;
  double m_iou;
};

Outcome metric_aggregation() {
  const TableRow rows[] = {
      {"vs-auto MIC", {44.79, 55.94, 64.45, 82.47}, {42.47, 29.89, 10.56, 21.33}, 61.91, 26.06},
      {"vs-manual FMARS labels", {71.34, 68.72, 69.37, 59.47}, {41.16, 47.03, 58.54, 54.14}, 67.23, 50.22},
      {"vs-manual SegFormer", {97.40, 0.06, 8.24, 0.00}, {27.90, 0.06, 7.68, 0.00}, 26.44, 8.91},
      {"vs-manual MIC", {76.59, 44.84, 51.78, 63.54}, {36.21, 40.15, 48.52, 56.41}, 59.19, 45.32},
      {"vs-manual DAFormer", {70.56, 65.97, 56.57, 69.10}, {38.02, 54.77, 52.64, 60.20}, 65.55, 51.41},
  };
  Outcome out;
  int matched = 0;
  for (const TableRow& r : rows) {
    const std::string acc = fixed2(eval::reported_mean(r.acc));
    const std::string iou = fixed2(eval::reported_mean(r.iou));
    if (acc != fixed2(r.m_acc)) out.fail(std::string(r.name) + " mAcc " + acc + " != " + fixed2(r.m_acc));
    else ++matched;
    if (iou != fixed2(r.m_iou)) out.fail(std::string(r.name) + " mIoU " + iou + " != " + fixed2(r.m_iou));
    else ++matched;
  }
  if (out.pass) out.detail = std::to_string(matched) + "/10 means exact";
  else out.detail = std::to_string(matched) + "/10 means exact; " + out.detail;
  return out;
}

std::vector<std::size_t> kept_indices(const std::vector<geo::ScoredBox>& kept) {
  std::vector<std::size_t> out;
  for (const auto& b : kept) out.push_back(std::stoul(b.phrase));
  return out;
}

Outcome filter_oracle() {
  Outcome out;
  std::mt19937_64 rng(20240611);
  const annotate::FilterConfig cfg;
  // 28000 px at 0.5 m is 7000 m^2.
  const testing::OracleParams params;
  int sets = 0, boxes = 0;
  for (; sets < 1000; ++sets) {
    const auto set = testing::random_box_set(rng);
    boxes += static_cast<int>(set.size());
    if (kept_indices(annotate::filter_boxes(set, cfg, 0.5)) != testing::reference_filter(set, params)) {
      out.fail("set " + std::to_string(sets) + " differs from reference");
      return out;
    }
  }
  auto kept = [&](geo::PixelBox b) {
    const std::vector<geo::ScoredBox> one{{b, 0.5, "0"}};
    return annotate::filter_boxes(one, cfg, 0.5).size() == 1;
  };
  if (!kept({0, 0, 100, 50})) out.fail("aspect exactly 0.5 removed");
  if (!kept({0, 0, 200, 140})) out.fail("area exactly 7000 m2 removed");
  if (kept({0, 0, 200, 140.0001})) out.fail("area 7000 m2 + eps kept");
  if (out.pass) out.detail = std::to_string(sets) + " sets, " + std::to_string(boxes) + " boxes";
  return out;
}

Outcome mock_end_to_end() {
  Outcome out;
  const std::string golden = testing::read_file(testing::test_data("golden/mock_end_to_end.geojson"));
  for (std::size_t workers : {1u, 4u}) {
    cli::Scenario s = cli::make_scenario();
    s.config.workers = workers;
    const ingest::GeoRaster raster = cli::scenario_raster(s);
    backends::MockDetector detector{s.detector_fixture};
    backends::MockSegmenter segmenter;
    const auto all = annotate::run_annotation(raster, {&s.footprints, &s.roads},
                                              {&detector, &segmenter}, s.config);
    const std::string tag = "workers=" + std::to_string(workers) + ": ";
    if (annotate::to_geojson(all) != golden) out.fail(tag + "output differs from golden");
    int buildings = 0, roads = 0;
    for (const auto& inst : all) {
      if (inst.label == annotate::ClassLabel::kBuildings) {
        ++buildings;
        double best = 0.0;
        for (const auto& e : s.expected_buildings) {
          best = std::max(best, geo::polygon_iou(inst.geometry, e));
        }
        if (best < 0.99) out.fail(tag + "building IoU " + fixed2(best));
      } else if (inst.label == annotate::ClassLabel::kRoads) {
        ++roads;
        const double area = geo::polygon_area(inst.geometry);
        if (std::abs(area - s.road_area_m2) > 0.01 * s.road_area_m2) {
          out.fail(tag + "road area " + fixed2(area) + " vs " + fixed2(s.road_area_m2));
        }
      }
    }
    if (buildings != 3) out.fail(tag + std::to_string(buildings) + " buildings");
    if (roads != 1) out.fail(tag + std::to_string(roads) + " roads");
  }
  if (out.pass) out.detail = "byte-identical for workers 1 and 4";
  return out;
}

Outcome entropy_sampler() {
  Outcome out;
  std::vector<dataset::TileRecord> tiles(3);
  const double entropies[] = {2.0, 1.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    tiles[i].event_id = "e";
    tiles[i].image_id = "i";
    tiles[i].col = i;
    tiles[i].entropy_bits = entropies[i];
    tiles[i].split = dataset::Split::kTrain;
  }
  const std::size_t n = 30000;
  std::array<std::size_t, 3> counts{};
  for (std::size_t idx : dataset::sample_tiles(tiles, n, 7)) ++counts.at(idx);
  const double p[] = {2.0 / 3, 1.0 / 3, 0.0};
  double stat = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double freq = static_cast<double>(counts[i]) / n;
    if (std::abs(freq - p[i]) > 0.02) out.fail("tile " + std::to_string(i) + " frequency " + fixed2(freq));
    if (p[i] > 0) stat += std::pow(counts[i] - n * p[i], 2) / (n * p[i]);
  }
  if (counts[2] != 0) out.fail("zero-entropy tile drawn");
  const double pvalue =
      boost::math::cdf(boost::math::complement(boost::math::chi_squared(1.0), stat));
  if (pvalue <= 0.01) out.fail("chi-square p " + std::to_string(pvalue));
  if (out.pass) {
    out.detail = "counts " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
                 std::to_string(counts[2]) + ", p=" + fixed2(pvalue);
  }
  return out;
}

Outcome geometry_suite() {
  Outcome out;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dim(1, 40);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    geo::BinaryMask m(dim(rng), dim(rng));
    std::bernoulli_distribution on(density(rng));
    for (auto& v : m.data) v = on(rng);
    if (!(geo::rle_decode(geo::rle_encode(m)) == m)) {
      out.fail("RLE round trip failed on mask " + std::to_string(i));
      break;
    }
  }
  double worst_iou = 1.0;
  for (int tested = 0; tested < 300;) {
    const geo::BinaryMask m = testing::random_blob(rng, 64);
    if (testing::count_set(m) < 100) continue;
    geo::Grid8 back(64, 64);
    for (const geo::Polygon& poly : geo::polygonize_mask(m)) geo::rasterize_into(poly, back, 1);
    worst_iou = std::min(worst_iou, testing::mask_iou(m, back));
    ++tested;
  }
  if (worst_iou < 0.98) out.fail("polygonize round trip IoU " + fixed2(worst_iou));
  std::uniform_real_distribution<double> pos(-1e3, 1e3);
  std::uniform_real_distribution<double> rad(0.5, 20);
  double worst_rel = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::vector<geo::Point> line{{pos(rng) + 5e5, pos(rng) + 4.5e6},
                                       {pos(rng) + 5e5, pos(rng) + 4.5e6}};
    const double r = i == 0 ? 5.0 : rad(rng);
    const double length = std::hypot(line[1].x - line[0].x, line[1].y - line[0].y);
    const double capsule = 2 * r * length + std::numbers::pi * r * r;
    worst_rel = std::max(worst_rel,
                         std::abs(geo::polygon_area(geo::buffer_polyline(line, r)) - capsule) / capsule);
  }
  if (worst_rel > 0.01) out.fail("buffer area error " + fixed2(100 * worst_rel) + "%");
  std::uniform_real_distribution<double> c(0, 100), s(0.5, 50);
  for (int i = 0; i < 10000 && out.pass; ++i) {
    const double ax = c(rng), ay = c(rng), bx = c(rng), by = c(rng);
    const geo::PixelBox a{ax, ay, ax + s(rng), ay + s(rng)};
    const geo::PixelBox b{bx, by, bx + s(rng), by + s(rng)};
    const double ab = geo::box_iou(a, b);
    if (ab != geo::box_iou(b, a) || ab < 0.0 || ab > 1.0 || geo::box_iou(a, a) != 1.0) {
      out.fail("box_iou property violated");
    }
    const bool disjoint = a.x1 <= b.x0 || b.x1 <= a.x0 || a.y1 <= b.y0 || b.y1 <= a.y0;
    if (disjoint != (ab == 0.0)) out.fail("box_iou disjointness violated");
  }
  if (out.pass) {
    out.detail = "worst blob IoU " + fixed2(worst_iou) + ", worst buffer error " +
                 fixed2(100 * worst_rel) + "%";
  }
  return out;
}

eval::ScoreMap one_pixel(float a, float b, float c) {
  eval::ScoreMap s(1, 1);
  s.at(0, 0, 0) = a;
  s.at(1, 0, 0) = b;
  s.at(2, 0, 0) = c;
  return s;
}

Outcome open_set_decoding() {
  Outcome out;
  if (eval::threshold_softmax(one_pixel(0.95f, 0.03f, 0.02f), 0.9).at(0, 0) != 1) {
    out.fail("(0.95, 0.03, 0.02) not decoded as class 1");
  }
  if (eval::threshold_softmax(one_pixel(0.6f, 0.3f, 0.1f), 0.9).at(0, 0) != 0) {
    out.fail("(0.6, 0.3, 0.1) not decoded as background");
  }
  std::mt19937 rng(12);
  std::normal_distribution<float> logit(0.0f, 2.0f);
  eval::ScoreMap s(100, 100);
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      float e[3];
      for (float& v : e) v = std::exp(logit(rng));
      const float sum = e[0] + e[1] + e[2];
      for (int k = 0; k < 3; ++k) s.at(k, x, y) = e[k] / sum;
    }
  }
  const geo::LabelRaster lab = eval::threshold_softmax(s, 0.0);
  int mismatches = 0;
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      int best = 0;
      for (int k = 1; k < 3; ++k) {
        if (s.at(k, x, y) > s.at(best, x, y)) best = k;
      }
      mismatches += lab.at(x, y) != best + 1;
    }
  }
  if (mismatches > 0) out.fail(std::to_string(mismatches) + " of 10000 differ from argmax");
  if (out.pass) out.detail = "10000 vectors match argmax";
  return out;
}

// Stripes whose class depends on position, computed on demand.
class ProceduralLabels final : public dataset::LabelSource {
 public:
  explicit ProceduralLabels(int size) : size_(size) {}
  int width() const override { return size_; }
  int height() const override { return size_; }
  geo::LabelRaster read(int x0, int y0, int w, int h) const override {
    geo::LabelRaster out(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        out.at(x, y) = static_cast<std::uint8_t>(((x0 + x) / 97 + (y0 + y) / 61) % 4);
      }
    }
    return out;
  }

 private:
  int size_;
};

Outcome tiling() {
  Outcome out;
  const int size = 17408;
  const ProceduralLabels labels(size);
  const auto tiles = dataset::tile_image({"e", "i", size, size, 0.3}, labels);
  if (tiles.size() != 1156) out.fail(std::to_string(tiles.size()) + " tiles");
  std::uint64_t total = 0;
  for (const auto& t : tiles) {
    std::uint64_t sum = 0;
    for (auto c : t.histogram) sum += c;
    total += sum;
    if (sum != 512u * 512u) {
      out.fail("tile r" + std::to_string(t.row) + " c" + std::to_string(t.col) + " sums to " +
               std::to_string(sum));
      break;
    }
  }
  if (out.pass) out.detail = std::to_string(tiles.size()) + " tiles, " + std::to_string(total) + " px";
  return out;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace fmars

int main() {
  using namespace fmars;
  log::set_level(log::Level::kOff);
  const Criterion criteria[] = {
      {"metric-aggregation", 1.0, metric_aggregation},
      {"filter-oracle", 10.0, filter_oracle},
      {"mock-end-to-end-golden", 30.0, mock_end_to_end},
      {"entropy-sampler", 5.0, entropy_sampler},
      {"geometry-suite", 30.0, geometry_suite},
      {"open-set-decoding", 0.0, open_set_decoding},
      {"tiling", 0.0, tiling},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      outcome.fail("took " + fixed2(secs) + " s, budget " + fixed2(c.budget_s) + " s");
    }
    failures += !outcome.pass;
    std::printf("%s %-24s %8.3f s  %s\n", outcome.pass ? "PASS" : "FAIL", c.name, secs,
                outcome.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
