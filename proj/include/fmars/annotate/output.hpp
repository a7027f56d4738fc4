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


// Cross-tile deduplication, deterministic ordering and GeoJSON output.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fmars/annotate/classes.hpp"

namespace fmars::annotate {

/// For same-class instances from different tiles with polygon IoU >=
/// `iou_threshold`, keeps the higher-confidence one (ties: lower tile index).
/// Instances without a source tile pass through. The result is in canonical
/// order and independent of the input order.
std::vector<InstanceAnnotation> dedupe_across_tiles(std::vector<InstanceAnnotation> instances,
                                                    double iou_threshold = 0.5);

/// Sorts by class id, then centroid x (west to east), then remaining fields,
/// giving a total order.
void sort_canonical(std::vector<InstanceAnnotation>& instances);

/// GeoJSON FeatureCollection text. Coordinates use 9 decimal places.
std::string to_geojson(std::vector<InstanceAnnotation> instances);

/// Reads a collection written by to_geojson(). Source tiles are not stored
/// in the file and come back unset. Throws InputError on malformed input.
std::vector<InstanceAnnotation> load_annotations(const std::filesystem::path& path);

/// Writes to_geojson() to `path` via a temporary file and rename.
/// Throws InputError if the path is not writable.
void merge_and_write(std::vector<InstanceAnnotation> instances,
                     const std::filesystem::path& path);

}  // namespace fmars::annotate
