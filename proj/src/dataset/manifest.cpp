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


#include "fmars/dataset/manifest.hpp"

#include <cmath>
#include <fstream>

#include "fmars/core/error.hpp"

namespace fmars::dataset {

using nlohmann::json;

json to_json(const TileRecord& r) {
  return {{"event", r.event_id},         {"image", r.image_id},
          {"row", r.row},                {"col", r.col},
          {"x0", r.x0},                  {"y0", r.y0},
          {"size", r.size},              {"resolution_m", r.resolution_m},
          {"histogram", r.histogram},    {"entropy_bits", r.entropy_bits},
          {"split", split_name(r.split)}};
}

TileRecord record_from_json(const json& j) {
  TileRecord r;
  try {
    r.event_id = j.at("event").get<std::string>();
    r.image_id = j.at("image").get<std::string>();
    r.row = j.at("row").get<int>();
    r.col = j.at("col").get<int>();
    r.x0 = j.at("x0").get<int>();
    r.y0 = j.at("y0").get<int>();
    r.size = j.at("size").get<int>();
    r.resolution_m = j.at("resolution_m").get<double>();
    r.histogram = j.at("histogram").get<ClassHistogram>();
    r.entropy_bits = j.at("entropy_bits").get<double>();
    r.split = parse_split(j.at("split").get<std::string>());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed tile record: ") + e.what());
  }
  std::uint64_t total = 0;
  for (auto c : r.histogram) total += c;
  if (r.size <= 0 || total != static_cast<std::uint64_t>(r.size) * static_cast<std::uint64_t>(r.size)) {
    throw InputError("tile record histogram does not cover the tile");
  }
  if (std::abs(label_entropy(r.histogram) - r.entropy_bits) > 1e-9) {
    throw InputError("tile record entropy does not match its histogram");
  }
  return r;
}

void write_manifest(const std::vector<TileRecord>& tiles, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (const TileRecord& r : tiles) out << to_json(r).dump() << '\n';
  if (!out) throw InputError("failed writing " + path.string());
}

std::vector<TileRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::vector<TileRecord> tiles;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      tiles.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return tiles;
}

}  // namespace fmars::dataset
