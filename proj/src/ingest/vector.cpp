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

#include "fmars/ingest/vector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fmars/core/error.hpp"
#include "fmars/core/log.hpp"

namespace fmars::ingest {
namespace {

using nlohmann::json;

geo::Point parse_position(const json& pos) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    throw InputError("invalid GeoJSON position");
  }
  return {pos[0].get<double>(), pos[1].get<double>()};
}

geo::Ring parse_ring(const json& coords) {
  if (!coords.is_array()) throw InputError("invalid GeoJSON ring");
  geo::Ring ring;
  ring.reserve(coords.size());
  for (const json& pos : coords) ring.push_back(parse_position(pos));
  return ring;
}

geo::Polygon parse_polygon(const json& rings) {
  if (!rings.is_array() || rings.empty()) throw InputError("invalid GeoJSON polygon");
  geo::Polygon poly;
  poly.space = geo::CoordSpace::kWorld;
  poly.exterior = parse_ring(rings[0]);
  for (std::size_t i = 1; i < rings.size(); ++i) poly.holes.push_back(parse_ring(rings[i]));
  return poly;
}

// RFC 7946 rings repeat their first position; normalize() would hide that.
bool rings_closed(const geo::Polygon& poly) {
  auto closed = [](const geo::Ring& r) { return !r.empty() && r.front() == r.back(); };
  return closed(poly.exterior) && std::all_of(poly.holes.begin(), poly.holes.end(), closed);
}

Polyline parse_line(const json& coords) {
  if (!coords.is_array()) throw InputError("invalid GeoJSON line");
  Polyline line;
  for (const json& pos : coords) {
    const geo::Point p = parse_position(pos);
    if (line.empty() || !(line.back() == p)) line.push_back(p);
  }
  return line;
}

const json& features_of(const json& collection) {
  if (!collection.is_object() || collection.value("type", "") != "FeatureCollection" ||
      !collection.contains("features") || !collection["features"].is_array()) {
    throw InputError("expected a GeoJSON FeatureCollection");
  }
  return collection["features"];
}

std::string feature_id(const json& feature, std::size_t index) {
  auto stringify = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (feature.contains("id") && !feature["id"].is_null()) return stringify(feature["id"]);
  if (feature.contains("properties") && feature["properties"].is_object() &&
      feature["properties"].contains("id")) {
    return stringify(feature["properties"]["id"]);
  }
  return std::to_string(index);
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    json doc;
    in >> doc;
    return doc;
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

FootprintSet parse_footprints(const json& collection, const geo::Bounds& extent) {
  FootprintSet out;
  const json& features = features_of(collection);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const json& feature = features[i];
    const json* geom = feature.contains("geometry") ? &feature["geometry"] : nullptr;
    if (geom == nullptr || !geom->is_object()) {
      ++out.skipped_count;
      continue;
    }
    const std::string type = geom->value("type", "");
    std::vector<geo::Polygon> parts;
    try {
      if (type == "Polygon") {
        parts.push_back(parse_polygon(geom->at("coordinates")));
      } else if (type == "MultiPolygon") {
        for (const json& p : geom->at("coordinates")) parts.push_back(parse_polygon(p));
      } else {
        ++out.skipped_count;
        continue;
      }
    } catch (const std::exception&) {
      ++out.invalid_count;
      continue;
    }
    const std::string id = feature_id(feature, i);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      geo::Polygon& poly = parts[k];
      if (!rings_closed(poly)) {
        ++out.invalid_count;
        continue;
      }
      geo::normalize(poly);
      if (!geo::validity_error(poly).empty()) {
        ++out.invalid_count;
        continue;
      }
      if (!geo::intersects_bounds(poly, extent)) continue;
      out.features.push_back(
          {std::move(poly), parts.size() > 1 ? id + "/" + std::to_string(k) : id});
    }
  }
  if (out.invalid_count > 0 || out.skipped_count > 0) {
    log::warn("footprints skipped", {{"invalid", out.invalid_count},
                                     {"non_polygon", out.skipped_count}});
  }
  return out;
}

FootprintSet load_footprints(const std::filesystem::path& path, const geo::Bounds& extent) {
  return parse_footprints(read_json_file(path), extent);
}

std::vector<Polyline> clip_polyline(std::span<const geo::Point> line,
                                    const geo::Bounds& box) {
  std::vector<Polyline> pieces;
  Polyline current;
  auto flush = [&] {
    if (current.size() >= 2) pieces.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const geo::Point p = line[i];
    const geo::Point q = line[i + 1];
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    double t0 = 0.0, t1 = 1.0;
    // Which boundary (if any) each end was clipped against: 0..3.
    int side0 = -1, side1 = -1;
    const double pk[4] = {-dx, dx, -dy, dy};
    const double qk[4] = {p.x - box.min_x, box.max_x - p.x, p.y - box.min_y, box.max_y - p.y};
    bool visible = true;
    for (int k = 0; k < 4 && visible; ++k) {
      if (pk[k] == 0.0) {
        if (qk[k] < 0.0) visible = false;
        continue;
      }
      const double r = qk[k] / pk[k];
      if (pk[k] < 0.0) {
        if (r > t1) visible = false;
        else if (r > t0) t0 = r, side0 = k;
      } else {
        if (r < t0) visible = false;
        else if (r < t1) t1 = r, side1 = k;
      }
    }
    if (!visible) {
      flush();
      continue;
    }
    auto at = [&](double t, int side) {
      geo::Point out{p.x + t * dx, p.y + t * dy};
      if (t == 0.0) out = p;
      if (t == 1.0) out = q;
      // Snap onto the clipping edge so the endpoint is exactly on it.
      switch (side) {
        case 0: out.x = box.min_x; break;
        case 1: out.x = box.max_x; break;
        case 2: out.y = box.min_y; break;
        case 3: out.y = box.max_y; break;
        default: break;
      }
      out.x = std::clamp(out.x, box.min_x, box.max_x);
      out.y = std::clamp(out.y, box.min_y, box.max_y);
      return out;
    };
    const geo::Point a = at(t0, side0);
    const geo::Point b = at(t1, side1);
    if (side0 >= 0 || current.empty() || !(current.back() == a)) {
      flush();
      current.push_back(a);
    }
    if (!(current.back() == b)) current.push_back(b);
    if (side1 >= 0) flush();
  }
  flush();
  return pieces;
}

RoadGraph parse_roads(const json& collection, const geo::Bounds& extent) {
  RoadGraph out;
  const json& features = features_of(collection);
  for (const json& feature : features) {
    const json* geom = feature.contains("geometry") ? &feature["geometry"] : nullptr;
    if (geom == nullptr || !geom->is_object()) {
      ++out.skipped_count;
      continue;
    }
    const std::string type = geom->value("type", "");
    std::vector<Polyline> lines;
    try {
      if (type == "LineString") {
        lines.push_back(parse_line(geom->at("coordinates")));
      } else if (type == "MultiLineString") {
        for (const json& l : geom->at("coordinates")) lines.push_back(parse_line(l));
      } else {
        ++out.skipped_count;
        continue;
      }
    } catch (const InputError&) {
      ++out.skipped_count;
      continue;
    } catch (const json::exception&) {
      ++out.skipped_count;
      continue;
    }
    for (const Polyline& line : lines) {
      for (Polyline& piece : clip_polyline(line, extent)) {
        out.polylines.push_back(std::move(piece));
      }
    }
  }
  if (out.skipped_count > 0) {
    log::warn("road features skipped", {{"count", out.skipped_count}});
  }
  return out;
}

RoadGraph load_roads(const std::filesystem::path& path, const geo::Bounds& extent) {
  return parse_roads(read_json_file(path), extent);
}

}  // namespace fmars::ingest
