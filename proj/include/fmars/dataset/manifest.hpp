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


// Tile manifests as JSON lines, one TileRecord per line:
//   {"event":"e1","image":"img","row":0,"col":1,"x0":512,"y0":0,"size":512,
//    "resolution_m":0.3,"histogram":[a,b,c,d],"entropy_bits":1.5,"split":"train"}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fmars/dataset/tiles.hpp"
#include "json.hpp"

namespace fmars::dataset {

nlohmann::json to_json(const TileRecord& r);

/// Throws InputError if fields are missing, the histogram does not sum to
/// size * size, or entropy_bits disagrees with the histogram.
TileRecord record_from_json(const nlohmann::json& j);

void write_manifest(const std::vector<TileRecord>& tiles, const std::filesystem::path& path);
std::vector<TileRecord> read_manifest(const std::filesystem::path& path);

}  // namespace fmars::dataset
