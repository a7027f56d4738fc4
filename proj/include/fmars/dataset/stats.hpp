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


// Per-event dataset statistics: images, tiles, covered area, instances.

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fmars/annotate/classes.hpp"
#include "fmars/dataset/tiles.hpp"
#include "json.hpp"

namespace fmars::dataset {

struct EventStats {
  std::string event_id;
  std::size_t images = 0;
  std::size_t tiles = 0;
  double area_km2 = 0.0;  // tile pixels * resolution^2 / 1e6
  std::array<std::size_t, annotate::kNumClasses> instances{};  // index = class id
};

struct DatasetStats {
  std::vector<EventStats> events;  // sorted by event id
  EventStats total;
};

/// `annotations` maps event id to that event's instances. Events present
/// in either input are reported.
DatasetStats dataset_stats(
    std::span<const TileRecord> tiles,
    const std::map<std::string, std::vector<annotate::InstanceAnnotation>>& annotations);

nlohmann::json to_json(const DatasetStats& stats);

/// Aligned plain-text table, one row per event plus a total row.
std::string format_table(const DatasetStats& stats);

}  // namespace fmars::dataset
