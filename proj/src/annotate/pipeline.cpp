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


#include "fmars/annotate/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>

#include "fmars/annotate/output.hpp"
#include "fmars/annotate/prompts.hpp"
#include "fmars/core/error.hpp"
#include "fmars/core/log.hpp"
#include "fmars/core/parallel.hpp"

namespace fmars::annotate {
namespace {

using nlohmann::json;

bool needs_tiles(ClassLabel c) {
  return c == ClassLabel::kBuildings || c == ClassLabel::kHighVegetation;
}

// Largest polygon of a tile-sized mask, in world coordinates.
std::optional<geo::Polygon> mask_to_polygon(const geo::MaskRLE& rle, const TileWindow& tile,
                                            const geo::AffineTransform& t,
                                            const geo::PolygonizeOptions& opts) {
  const auto polys = geo::polygonize_mask(geo::rle_decode(rle), opts);
  const geo::Polygon* best = nullptr;
  double best_area = 0.0;
  for (const geo::Polygon& p : polys) {
    const double a = geo::polygon_area(p);
    if (a > best_area) best = &p, best_area = a;
  }
  if (!best) return std::nullopt;
  return geo::to_world(geo::translated(*best, tile.x0, tile.y0), t);
}

void check_leakage(const geo::Polygon& world, const geo::PixelBox& box, const TileWindow& tile,
                   const geo::AffineTransform& t, double margin) {
  const geo::Bounds b = geo::polygon_bounds(geo::to_pixel(world, t));
  const double x0 = box.x0 + tile.x0 - margin, x1 = box.x1 + tile.x0 + margin;
  const double y0 = box.y0 + tile.y0 - margin, y1 = box.y1 + tile.y0 + margin;
  if (b.min_x < x0 || b.max_x > x1 || b.min_y < y0 || b.max_y > y1) {
    log::warn("segmenter mask leaks outside its prompt box",
              {{"tile", tile.index}, {"margin_px", margin}});
  }
}

json fingerprint(const ingest::GeoRaster& raster, const Sources& sources,
                 const AnnotateConfig& cfg) {
  const auto& t = raster.transform();
  json classes = json::array();
  for (ClassLabel c : cfg.classes) classes.push_back(class_name(c));
  return {{"width", raster.width()},
          {"height", raster.height()},
          {"transform", {t.a(), t.b(), t.c(), t.d(), t.e(), t.f(), t.resolution_m()}},
          {"tile_size", cfg.tiling.size},
          {"tile_overlap", cfg.tiling.overlap},
          {"filter",
           {cfg.filter.box_threshold, cfg.filter.text_threshold, cfg.filter.nms_iou,
            cfg.filter.min_aspect, cfg.filter.max_area_m2}},
          {"prompts", cfg.vegetation_prompts},
          {"multimask", cfg.multimask},
          {"classes", classes},
          {"footprints", sources.footprints ? sources.footprints->features.size() : 0}};
}

std::vector<InstanceAnnotation> segment_boxes(const ingest::Window& window,
                                              std::span<const geo::PixelBox> boxes,
                                              ClassLabel label, Provenance provenance,
                                              const TileWindow& tile,
                                              const ingest::GeoRaster& raster,
                                              const BackendSet& backends,
                                              const AnnotateConfig& cfg) {
  std::vector<InstanceAnnotation> out;
  if (boxes.empty()) return out;
  const auto req = backends::make_segment_request(window.pixels, boxes, cfg.multimask);
  const backends::SegmentResult res = backends.segmenter->segment(req);
  if (res.masks.size() != req.boxes.size()) {
    throw ProtocolError("segmenter returned a wrong number of masks");
  }
  for (std::size_t i = 0; i < res.masks.size(); ++i) {
    auto poly = mask_to_polygon(res.masks[i].mask, tile, raster.transform(), cfg.polygonize);
    if (!poly) continue;
    if (label == ClassLabel::kBuildings) {
      check_leakage(*poly, req.boxes[i], tile, raster.transform(), cfg.leakage_margin_px);
    }
    out.push_back({std::move(*poly), label, res.masks[i].confidence, provenance, tile.index});
  }
  return out;
}

}  // namespace

void AnnotateConfig::validate() const {
  filter.validate();
  tiling.validate();
  if (!(road_radius_m > 0.0)) throw InputError("road buffer radius must be positive");
  if (vegetation_prompts.empty()) throw InputError("at least one vegetation prompt is required");
  for (const std::string& p : vegetation_prompts) {
    if (p.empty()) throw InputError("vegetation prompts must be non-empty");
  }
  if (!(dedupe_iou > 0.0 && dedupe_iou <= 1.0)) throw InputError("dedupe_iou must be in (0,1]");
  if (leakage_margin_px < 0.0) throw InputError("leakage margin must be >= 0");
  for (ClassLabel c : classes) {
    if (c == ClassLabel::kBackground) throw InputError("background is not an annotation class");
  }
}

std::vector<InstanceAnnotation> annotate_tile(const ingest::GeoRaster& raster, ClassLabel label,
                                              const std::vector<TileWindow>& tiles,
                                              const TileWindow& tile, const Sources& sources,
                                              const BackendSet& backends,
                                              const AnnotateConfig& cfg) {
  if (label == ClassLabel::kBuildings) {
    if (!sources.footprints) return {};
    const auto prompts =
        footprints_to_prompts(sources.footprints->features, raster.transform(), tiles, tile,
                              raster.width(), raster.height());
    if (prompts.empty()) return {};
    std::vector<geo::PixelBox> boxes;
    for (const FootprintPrompt& p : prompts) boxes.push_back(p.box);
    const auto window = raster.read_window(tile.x0, tile.y0, tile.width, tile.height);
    return segment_boxes(window, boxes, label, Provenance::kFootprintSegmenter, tile, raster,
                         backends, cfg);
  }
  if (label == ClassLabel::kHighVegetation) {
    const auto window = raster.read_window(tile.x0, tile.y0, tile.width, tile.height);
    std::vector<geo::ScoredBox> candidates;
    for (const std::string& prompt : cfg.vegetation_prompts) {
      auto found = backends.detector->detect(
          {window.pixels, prompt, cfg.filter.box_threshold, cfg.filter.text_threshold});
      candidates.insert(candidates.end(), found.begin(), found.end());
    }
    const auto kept = filter_boxes(candidates, cfg.filter, raster.resolution_m());
    std::vector<geo::PixelBox> boxes;
    for (const geo::ScoredBox& b : kept) {
      if (auto c = geo::clamp_box(b.box, tile.width, tile.height)) boxes.push_back(*c);
    }
    return segment_boxes(window, boxes, label, Provenance::kTextSegmenter, tile, raster,
                         backends, cfg);
  }
  throw InputError("class " + std::string(class_name(label)) + " is not tile-based");
}

std::vector<InstanceAnnotation> annotate_class(const ingest::GeoRaster& raster, ClassLabel label,
                                               const Sources& sources,
                                               const BackendSet& backends,
                                               const AnnotateConfig& cfg) {
  cfg.validate();
  std::vector<InstanceAnnotation> out;
  if (label == ClassLabel::kRoads) {
    if (!sources.roads) return out;
    return roads_to_instances(*sources.roads, cfg.road_radius_m, raster.transform());
  }
  if (!backends.segmenter) throw InputError("a segmenter backend is required");
  if (label == ClassLabel::kHighVegetation && !backends.detector) {
    throw InputError("a detector backend is required for vegetation");
  }
  const auto tiles = plan_tiles(raster.width(), raster.height(), cfg.tiling);
  std::vector<std::vector<InstanceAnnotation>> per_tile(tiles.size());
  parallel_for(tiles.size(), cfg.workers, [&](std::size_t i) {
    per_tile[i] = annotate_tile(raster, label, tiles, tiles[i], sources, backends, cfg);
  });
  for (auto& list : per_tile) {
    for (auto& inst : list) out.push_back(std::move(inst));
  }
  return out;
}

std::vector<InstanceAnnotation> run_annotation(const ingest::GeoRaster& raster,
                                               const Sources& sources,
                                               const BackendSet& backends,
                                               const AnnotateConfig& cfg,
                                               const RunOptions& opts) {
  cfg.validate();
  const auto tiles = plan_tiles(raster.width(), raster.height(), cfg.tiling);
  const json fp = fingerprint(raster, sources, cfg);

  std::vector<WorkKey> work;
  for (ClassLabel c : cfg.classes) {
    if (!needs_tiles(c)) continue;
    if (c == ClassLabel::kBuildings && !sources.footprints) {
      log::warn("no footprints given; skipping buildings");
      continue;
    }
    if (!backends.segmenter) throw InputError("a segmenter backend is required");
    if (c == ClassLabel::kHighVegetation && !backends.detector) {
      throw InputError("a detector backend is required for vegetation");
    }
    for (const TileWindow& t : tiles) work.emplace_back(c, t.index);
  }

  Checkpoint done{fp, {}};
  if (opts.resume) {
    if (!opts.checkpoint) throw InputError("--resume needs a checkpoint path");
    if (std::filesystem::exists(*opts.checkpoint)) {
      Checkpoint cp = load_checkpoint(*opts.checkpoint);
      if (cp.fingerprint != fp) {
        throw InputError("checkpoint " + opts.checkpoint->string() +
                         " was written for a different input or configuration");
      }
      done.completed = std::move(cp.completed);
      log::info("resuming from checkpoint", {{"completed_items", done.completed.size()},
                                             {"total_items", work.size()}});
    }
  }

  std::vector<WorkKey> pending;
  for (const WorkKey& k : work) {
    if (!done.completed.count(k)) pending.push_back(k);
  }
  std::vector<std::optional<std::vector<InstanceAnnotation>>> results(pending.size());
  try {
    parallel_for(pending.size(), cfg.workers, [&](std::size_t i) {
      const auto [label, tile] = pending[i];
      const auto start = std::chrono::steady_clock::now();
      auto found = annotate_tile(raster, label, tiles, tiles[tile], sources, backends, cfg);
      const auto ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      log::info("tile done", {{"class", class_name(label)}, {"tile", tile},
                              {"instances", found.size()}, {"ms", ms}});
      results[i] = std::move(found);
    });
  } catch (const BackendError& e) {
    if (opts.checkpoint) {
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (results[i]) done.completed[pending[i]] = std::move(*results[i]);
      }
      save_checkpoint(done, *opts.checkpoint);
      log::error("backend failure; progress saved",
                 {{"checkpoint", opts.checkpoint->string()},
                  {"completed_items", done.completed.size()},
                  {"total_items", work.size()},
                  {"error", e.what()}});
    }
    throw;
  }

  std::vector<InstanceAnnotation> all;
  for (auto& [key, list] : done.completed) {
    for (auto& inst : list) all.push_back(std::move(inst));
  }
  for (auto& r : results) {
    for (auto& inst : *r) all.push_back(std::move(inst));
  }
  all = dedupe_across_tiles(std::move(all), cfg.dedupe_iou);

  if (std::find(cfg.classes.begin(), cfg.classes.end(), ClassLabel::kRoads) != cfg.classes.end()) {
    if (sources.roads) {
      auto roads = roads_to_instances(*sources.roads, cfg.road_radius_m, raster.transform());
      all.insert(all.end(), std::make_move_iterator(roads.begin()),
                 std::make_move_iterator(roads.end()));
    } else {
      log::warn("no road graph given; skipping roads");
    }
  }
  sort_canonical(all);
  if (opts.checkpoint && std::filesystem::exists(*opts.checkpoint)) {
    std::filesystem::remove(*opts.checkpoint);
  }
  return all;
}

}  // namespace fmars::annotate
