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


#include "fmars/annotate/checkpoint.hpp"

#include <fstream>

#include "fmars/core/error.hpp"
#include "fmars/ingest/vector.hpp"

namespace fmars::annotate {

using nlohmann::json;

namespace {

json ring_to_json(const geo::Ring& ring) {
  json out = json::array();
  for (const geo::Point& p : ring) out.push_back({p.x, p.y});
  return out;
}

geo::Ring ring_from_json(const json& j) {
  geo::Ring ring;
  for (const json& p : j) ring.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return ring;
}

}  // namespace

json instance_to_json(const InstanceAnnotation& inst) {
  json holes = json::array();
  for (const geo::Ring& h : inst.geometry.holes) holes.push_back(ring_to_json(h));
  json j{{"class", class_name(inst.label)},
         {"confidence", inst.confidence},
         {"provenance", provenance_name(inst.provenance)},
         {"exterior", ring_to_json(inst.geometry.exterior)},
         {"holes", std::move(holes)}};
  if (inst.source_tile) j["source_tile"] = *inst.source_tile;
  return j;
}

InstanceAnnotation instance_from_json(const json& j) {
  InstanceAnnotation inst;
  inst.label = parse_class(j.at("class").get<std::string>());
  inst.confidence = j.at("confidence").get<double>();
  inst.provenance = parse_provenance(j.at("provenance").get<std::string>());
  inst.geometry.space = geo::CoordSpace::kWorld;
  inst.geometry.exterior = ring_from_json(j.at("exterior"));
  for (const json& h : j.at("holes")) inst.geometry.holes.push_back(ring_from_json(h));
  if (j.contains("source_tile")) inst.source_tile = j.at("source_tile").get<std::size_t>();
  return inst;
}

void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
  json items = json::array();
  for (const auto& [key, instances] : cp.completed) {
    json list = json::array();
    for (const InstanceAnnotation& inst : instances) list.push_back(instance_to_json(inst));
    items.push_back({{"class", class_name(key.first)}, {"tile", key.second},
                     {"instances", std::move(list)}});
  }
  const json doc{{"version", 1}, {"fingerprint", cp.fingerprint}, {"completed", std::move(items)}};
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write checkpoint " + path.string());
    out << doc.dump() << "\n";
    if (!out) throw InputError("failed writing checkpoint " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const json doc = ingest::read_json_file(path);
  try {
    if (doc.at("version").get<int>() != 1) throw InputError("unsupported checkpoint version");
    Checkpoint cp;
    cp.fingerprint = doc.at("fingerprint");
    for (const json& item : doc.at("completed")) {
      std::vector<InstanceAnnotation> list;
      for (const json& inst : item.at("instances")) list.push_back(instance_from_json(inst));
      cp.completed[{parse_class(item.at("class").get<std::string>()),
                    item.at("tile").get<std::size_t>()}] = std::move(list);
    }
    return cp;
  } catch (const json::exception& e) {
    throw InputError("malformed checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace fmars::annotate
