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


#include "fmars/dataset/stats.hpp"

#include <set>

#include <fmt/format.h>

namespace fmars::dataset {

using annotate::ClassLabel;

DatasetStats dataset_stats(
    std::span<const TileRecord> tiles,
    const std::map<std::string, std::vector<annotate::InstanceAnnotation>>& annotations) {
  std::map<std::string, EventStats> by_event;
  std::map<std::string, std::set<std::string>> images;
  for (const TileRecord& t : tiles) {
    EventStats& e = by_event[t.event_id];
    ++e.tiles;
    e.area_km2 += static_cast<double>(t.size) * t.size * t.resolution_m * t.resolution_m / 1e6;
    images[t.event_id].insert(t.image_id);
  }
  for (const auto& [event, instances] : annotations) {
    EventStats& e = by_event[event];
    for (const auto& inst : instances) ++e.instances[static_cast<std::size_t>(inst.label)];
  }
  DatasetStats out;
  out.total.event_id = "total";
  for (auto& [event, e] : by_event) {
    e.event_id = event;
    e.images = images[event].size();
    out.total.images += e.images;
    out.total.tiles += e.tiles;
    out.total.area_km2 += e.area_km2;
    for (std::size_t c = 0; c < e.instances.size(); ++c) out.total.instances[c] += e.instances[c];
    out.events.push_back(e);
  }
  return out;
}

namespace {

nlohmann::json event_json(const EventStats& e) {
  nlohmann::json counts = nlohmann::json::object();
  for (int c = 1; c < annotate::kNumClasses; ++c) {
    counts[std::string(annotate::class_name(static_cast<ClassLabel>(c)))] = e.instances[c];
  }
  return {{"event", e.event_id},     {"images", e.images},  {"tiles", e.tiles},
          {"area_km2", e.area_km2}, {"instances", counts}};
}

}  // namespace

nlohmann::json to_json(const DatasetStats& stats) {
  nlohmann::json events = nlohmann::json::array();
  for (const EventStats& e : stats.events) events.push_back(event_json(e));
  return {{"events", events}, {"total", event_json(stats.total)}};
}

std::string format_table(const DatasetStats& stats) {
  std::string out = fmt::format("{:<20} {:>7} {:>7} {:>12} {:>10} {:>10} {:>16}\n", "event",
                                "images", "tiles", "area_km2", "roads", "buildings",
                                "high_vegetation");
  auto row = [&](const EventStats& e) {
    out += fmt::format("{:<20} {:>7} {:>7} {:>12.4f} {:>10} {:>10} {:>16}\n", e.event_id,
                       e.images, e.tiles, e.area_km2,
                       e.instances[static_cast<std::size_t>(ClassLabel::kRoads)],
                       e.instances[static_cast<std::size_t>(ClassLabel::kBuildings)],
                       e.instances[static_cast<std::size_t>(ClassLabel::kHighVegetation)]);
  };
  for (const EventStats& e : stats.events) row(e);
  row(stats.total);
  return out;
}

}  // namespace fmars::dataset
