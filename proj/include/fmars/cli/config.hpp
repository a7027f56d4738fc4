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


// Pipeline configuration: JSON file, defaults and validation.
//
// Every key is optional; unknown keys are rejected. Relative paths resolve
// against the directory of the config file.
//
//   {
//     "paths": {"raster": "...", "footprints": "...", "roads": "...",
//               "output": "...", "detector_fixture": "...", "checkpoint": "..."},
//     "classes": ["roads", "high_vegetation", "buildings"],
//     "filter": {"box_threshold": 0.12, "text_threshold": 0.3, "nms_iou": 0.5,
//                "min_aspect": 0.5, "max_area_m2": 7000},
//     "roads": {"buffer_radius_m": 5},
//     "prompts": {"high_vegetation": ["bushes"]},
//     "segmenter": {"multimask": false, "leakage_margin_px": 8},
//     "polygonize": {"min_area_px": 4, "simplify_tol_px": 1},
//     "merge": {"dedupe_iou": 0.5},
//     "tiling": {"size": 1024, "overlap": 128},
//     "backend": {"kind": "mock" | "remote", "url": "", "timeout_ms": 120000,
//                 "max_in_flight": 4, "attempts": 3, "initial_backoff_ms": 500},
//     "dataset": {"tile_size": 512, "test_image_score": "mean_tile_entropy"},
//     "eval": {"confidence_tau": 0.9},
//     "resolution_m": null,
//     "workers": 0,
//     "seed": 0
//   }

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fmars/annotate/pipeline.hpp"
#include "fmars/dataset/sampling.hpp"
#include "fmars/eval/run.hpp"
#include "json.hpp"

namespace fmars::cli {

using OptPath = std::optional<std::filesystem::path>;

struct PathsConfig {
  OptPath raster;
  OptPath footprints;
  OptPath roads;
  OptPath output;
  OptPath detector_fixture;
  OptPath checkpoint;  // default: <output>.checkpoint.json

  friend bool operator==(const PathsConfig&, const PathsConfig&) = default;
};

enum class BackendKind { kMock, kRemote };

struct BackendConfig {
  BackendKind kind = BackendKind::kMock;
  std::string url;  // remote only; FMARS_BACKEND_URL when empty
  int timeout_ms = 120'000;
  int max_in_flight = 4;
  int attempts = 3;
  int initial_backoff_ms = 500;

  friend bool operator==(const BackendConfig&, const BackendConfig&) = default;
};

struct DatasetConfig {
  int tile_size = 512;
  dataset::ImageScore test_image_score = dataset::ImageScore::kMeanTileEntropy;

  friend bool operator==(const DatasetConfig&, const DatasetConfig&) = default;
};

struct PipelineConfig {
  PathsConfig paths;
  annotate::AnnotateConfig annotate;  // workers lives here
  BackendConfig backend;
  DatasetConfig dataset;
  double confidence_tau = 0.9;
  std::optional<double> resolution_m;
  std::uint64_t seed = 0;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

bool operator==(const PipelineConfig& a, const PipelineConfig& b);

/// Throws InputError on unknown keys or wrongly typed values.
PipelineConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

/// Complete configuration, accepted back by parse_config().
nlohmann::json to_json(const PipelineConfig& cfg);

}  // namespace fmars::cli
