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


#include "fmars/annotate/classes.hpp"

#include <string>

#include "fmars/core/error.hpp"

namespace fmars::annotate {

std::string_view class_name(ClassLabel c) {
  switch (c) {
    case ClassLabel::kBackground: return "background";
    case ClassLabel::kRoads: return "roads";
    case ClassLabel::kHighVegetation: return "high_vegetation";
    case ClassLabel::kBuildings: return "buildings";
  }
  return "unknown";
}

ClassLabel parse_class(std::string_view name) {
  for (int i = 0; i < kNumClasses; ++i) {
    const auto c = static_cast<ClassLabel>(i);
    if (class_name(c) == name) return c;
  }
  throw InputError("unknown class '" + std::string(name) + "'");
}

int precedence_rank(ClassLabel c) {
  switch (c) {
    case ClassLabel::kBackground: return 0;
    case ClassLabel::kHighVegetation: return 1;
    case ClassLabel::kRoads: return 2;
    case ClassLabel::kBuildings: return 3;
  }
  return 0;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kFootprintSegmenter: return "footprint+segmenter";
    case Provenance::kTextSegmenter: return "text+segmenter";
    case Provenance::kRoadBuffer: return "road-buffer";
  }
  return "unknown";
}

Provenance parse_provenance(std::string_view name) {
  for (Provenance p : {Provenance::kFootprintSegmenter, Provenance::kTextSegmenter,
                       Provenance::kRoadBuffer}) {
    if (provenance_name(p) == name) return p;
  }
  throw InputError("unknown provenance '" + std::string(name) + "'");
}

}  // namespace fmars::annotate
