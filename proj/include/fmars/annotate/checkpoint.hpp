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


// Resumable record of finished (class, tile) work items.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <utility>
#include <vector>

#include "fmars/annotate/classes.hpp"
#include "json.hpp"

namespace fmars::annotate {

using WorkKey = std::pair<ClassLabel, std::size_t>;  // (class, tile index)

struct Checkpoint {
  /// Identifies the run configuration; resuming with a different one fails.
  nlohmann::json fingerprint;
  std::map<WorkKey, std::vector<InstanceAnnotation>> completed;
};

nlohmann::json instance_to_json(const InstanceAnnotation& inst);
InstanceAnnotation instance_from_json(const nlohmann::json& j);

void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
/// Throws InputError on a missing or malformed file.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace fmars::annotate
