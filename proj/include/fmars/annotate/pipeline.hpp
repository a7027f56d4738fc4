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


// Per-class annotation workflows over a tiled raster.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fmars/annotate/checkpoint.hpp"
#include "fmars/annotate/classes.hpp"
#include "fmars/annotate/filter.hpp"
#include "fmars/annotate/tiling.hpp"
#include "fmars/backends/backend.hpp"
#include "fmars/geo/polygon.hpp"
#include "fmars/ingest/raster.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::annotate {

struct AnnotateConfig {
  FilterConfig filter;
  TilingConfig tiling;
  double road_radius_m = 5.0;
  std::vector<std::string> vegetation_prompts{"bushes"};
  bool multimask = false;
  double dedupe_iou = 0.5;
  double leakage_margin_px = 8.0;
  geo::PolygonizeOptions polygonize;
  std::size_t workers = 0;  // 0: available parallelism
  std::vector<ClassLabel> classes{ClassLabel::kRoads, ClassLabel::kHighVegetation,
                                  ClassLabel::kBuildings};

  void validate() const;
};

struct Sources {
  const ingest::FootprintSet* footprints = nullptr;
  const ingest::RoadGraph* roads = nullptr;
};

struct BackendSet {
  const backends::Detector* detector = nullptr;
  const backends::Segmenter* segmenter = nullptr;
};

struct RunOptions {
  std::optional<std::filesystem::path> checkpoint;  // written on backend failure
  bool resume = false;                              // reuse items from `checkpoint`
};

/// Instances of one class over the whole raster, before deduplication.
/// Buildings: footprint boxes -> segment. HighVegetation: text prompts ->
/// detect -> filter_boxes -> segment. Roads: buffered polylines. The
/// largest polygon of each mask becomes the instance.
std::vector<InstanceAnnotation> annotate_class(const ingest::GeoRaster& raster, ClassLabel label,
                                               const Sources& sources,
                                               const BackendSet& backends,
                                               const AnnotateConfig& cfg);

/// Every configured class, deduplicated across tiles, in canonical order.
/// On a backend failure, finished work is saved to `opts.checkpoint` (if
/// set) before the error propagates.
std::vector<InstanceAnnotation> run_annotation(const ingest::GeoRaster& raster,
                                               const Sources& sources,
                                               const BackendSet& backends,
                                               const AnnotateConfig& cfg,
                                               const RunOptions& opts = {});

/// Segmentation of one tile: the instances produced by `label` on `tile`.
std::vector<InstanceAnnotation> annotate_tile(const ingest::GeoRaster& raster, ClassLabel label,
                                              const std::vector<TileWindow>& tiles,
                                              const TileWindow& tile, const Sources& sources,
                                              const BackendSet& backends,
                                              const AnnotateConfig& cfg);

}  // namespace fmars::annotate
