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


#include "fmars/annotate/output.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include <fmt/format.h>

#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::annotate {
namespace {

struct Keyed {
  InstanceAnnotation inst;
  geo::Point centroid;
};

// Lexicographic comparison of all vertex coordinates.
int compare_rings(const geo::Ring& a, const geo::Ring& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].x != b[i].x) return a[i].x < b[i].x ? -1 : 1;
    if (a[i].y != b[i].y) return a[i].y < b[i].y ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare_polygons(const geo::Polygon& a, const geo::Polygon& b) {
  if (int c = compare_rings(a.exterior, b.exterior)) return c;
  if (a.holes.size() != b.holes.size()) return a.holes.size() < b.holes.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.holes.size(); ++i) {
    if (int c = compare_rings(a.holes[i], b.holes[i])) return c;
  }
  return 0;
}

bool canonical_less(const Keyed& a, const Keyed& b) {
  const auto ka = std::make_tuple(static_cast<int>(a.inst.label), a.centroid.x, a.centroid.y,
                                  -a.inst.confidence, static_cast<int>(a.inst.provenance),
                                  a.inst.source_tile.value_or(SIZE_MAX));
  const auto kb = std::make_tuple(static_cast<int>(b.inst.label), b.centroid.x, b.centroid.y,
                                  -b.inst.confidence, static_cast<int>(b.inst.provenance),
                                  b.inst.source_tile.value_or(SIZE_MAX));
  if (ka != kb) return ka < kb;
  return compare_polygons(a.inst.geometry, b.inst.geometry) < 0;
}

std::vector<Keyed> keyed(std::vector<InstanceAnnotation> instances) {
  std::vector<Keyed> out;
  out.reserve(instances.size());
  for (InstanceAnnotation& inst : instances) {
    const geo::Point c = geo::polygon_centroid(inst.geometry);
    out.push_back({std::move(inst), c});
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void append_ring(std::string& out, const geo::Ring& ring) {
  out += '[';
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (i) out += ',';
    fmt::format_to(std::back_inserter(out), "[{:.9f},{:.9f}]", ring[i].x, ring[i].y);
  }
  out += ']';
}

}  // namespace

void sort_canonical(std::vector<InstanceAnnotation>& instances) {
  auto k = keyed(std::move(instances));
  instances.clear();
  for (Keyed& e : k) instances.push_back(std::move(e.inst));
}

std::vector<InstanceAnnotation> dedupe_across_tiles(std::vector<InstanceAnnotation> instances,
                                                    double iou_threshold) {
  std::vector<Keyed> items = keyed(std::move(instances));
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ia = items[a].inst;
    const auto& ib = items[b].inst;
    if (ia.confidence != ib.confidence) return ia.confidence > ib.confidence;
    return ia.source_tile.value_or(SIZE_MAX) < ib.source_tile.value_or(SIZE_MAX);
  });

  std::vector<bool> keep(items.size(), false);
  std::vector<std::size_t> kept;
  std::vector<geo::Bounds> bounds(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) bounds[i] = geo::polygon_bounds(items[i].inst.geometry);
  for (std::size_t i : order) {
    const InstanceAnnotation& cand = items[i].inst;
    bool duplicate = false;
    if (cand.source_tile) {
      for (std::size_t k : kept) {
        const InstanceAnnotation& other = items[k].inst;
        if (other.label != cand.label || !other.source_tile ||
            *other.source_tile == *cand.source_tile || !bounds[k].intersects(bounds[i])) {
          continue;
        }
        if (geo::polygon_iou(other.geometry, cand.geometry) >= iou_threshold) {
          duplicate = true;
          break;
        }
      }
    }
    if (!duplicate) {
      keep[i] = true;
      kept.push_back(i);
    }
  }
  std::vector<InstanceAnnotation> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (keep[i]) out.push_back(std::move(items[i].inst));
  }
  return out;
}

std::string to_geojson(std::vector<InstanceAnnotation> instances) {
  const auto items = keyed(std::move(instances));
  std::string out = "{\"type\":\"FeatureCollection\",\"features\":[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const InstanceAnnotation& inst = items[i].inst;
    if (inst.label == ClassLabel::kBackground) throw InputError("background instance in output");
    if (i) out += ',';
    out += "\n{\"type\":\"Feature\",\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[";
    append_ring(out, inst.geometry.exterior);
    for (const geo::Ring& hole : inst.geometry.holes) {
      out += ',';
      append_ring(out, hole);
    }
    fmt::format_to(std::back_inserter(out),
                   "]}},\"properties\":{{\"class\":\"{}\",\"class_id\":{},\"confidence\":{},"
                   "\"provenance\":\"{}\"}}}}",
                   class_name(inst.label), static_cast<int>(inst.label), inst.confidence,
                   provenance_name(inst.provenance));
  }
  out += items.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::vector<InstanceAnnotation> load_annotations(const std::filesystem::path& path) {
  const nlohmann::json doc = ingest::read_json_file(path);
  std::vector<InstanceAnnotation> out;
  try {
    if (doc.value("type", "") != "FeatureCollection") {
      throw InputError(path.string() + " is not a GeoJSON FeatureCollection");
    }
    for (const auto& feature : doc.at("features")) {
      const auto& geom = feature.at("geometry");
      if (geom.at("type") != "Polygon") throw InputError("annotation geometry must be a Polygon");
      InstanceAnnotation inst;
      inst.geometry.space = geo::CoordSpace::kWorld;
      const auto& rings = geom.at("coordinates");
      for (std::size_t r = 0; r < rings.size(); ++r) {
        geo::Ring ring;
        for (const auto& pos : rings[r]) ring.push_back({pos.at(0).get<double>(), pos.at(1).get<double>()});
        if (r == 0) {
          inst.geometry.exterior = std::move(ring);
        } else {
          inst.geometry.holes.push_back(std::move(ring));
        }
      }
      geo::normalize(inst.geometry);
      const auto& props = feature.at("properties");
      inst.label = parse_class(props.at("class").get<std::string>());
      inst.confidence = props.at("confidence").get<double>();
      inst.provenance = parse_provenance(props.at("provenance").get<std::string>());
      if (inst.label == ClassLabel::kBackground) throw InputError("background instance in annotations");
      out.push_back(std::move(inst));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed annotations in " + path.string() + ": " + e.what());
  }
  return out;
}

void merge_and_write(std::vector<InstanceAnnotation> instances,
                     const std::filesystem::path& path) {
  const std::string text = to_geojson(std::move(instances));
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("failed writing " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot write " + path.string() + ": " + ec.message());
}

}  // namespace fmars::annotate
