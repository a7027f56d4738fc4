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


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fmars/geo/polygon.hpp"

namespace fmars::annotate {

/// Integer codes are shared by output files, label rasters and metrics.
enum class ClassLabel : std::uint8_t {
  kBackground = 0,
  kRoads = 1,
  kHighVegetation = 2,
  kBuildings = 3,
};

inline constexpr int kNumClasses = 4;

std::string_view class_name(ClassLabel c);
/// Accepts the names produced by class_name(). Throws InputError otherwise.
ClassLabel parse_class(std::string_view name);

/// Semantic-rendering precedence: larger wins where instances overlap.
int precedence_rank(ClassLabel c);

enum class Provenance : std::uint8_t {
  kFootprintSegmenter,
  kTextSegmenter,
  kRoadBuffer,
};

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

struct InstanceAnnotation {
  geo::Polygon geometry;  // world coordinates
  ClassLabel label = ClassLabel::kBackground;
  double confidence = 0.0;
  Provenance provenance = Provenance::kFootprintSegmenter;
  std::optional<std::size_t> source_tile;  // unset for road buffers

  friend bool operator==(const InstanceAnnotation&, const InstanceAnnotation&) = default;
};

}  // namespace fmars::annotate
