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


// Entropy-weighted tile sampling and per-event test image selection.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fmars/dataset/tiles.hpp"

namespace fmars::dataset {

/// `n` independent draws with replacement among train tiles, with
/// probability proportional to entropy_bits. Zero-entropy tiles are never
/// drawn. Returns indices into `tiles`. The sequence depends only on the
/// inputs and `seed`. Throws InputError if no train tile has positive entropy.
std::vector<std::size_t> sample_tiles(std::span<const TileRecord> tiles, std::size_t n,
                                      std::uint64_t seed);

/// Probability of each tile under sample_tiles().
std::vector<double> sampling_probabilities(std::span<const TileRecord> tiles);

enum class ImageScore {
  kMeanTileEntropy,  // mean of entropy_bits over the image's tiles
  kImageEntropy,     // entropy of the summed histogram
};

/// (event id, image id)
using ImageKey = std::pair<std::string, std::string>;

/// Tags the highest-scoring image of each event as test and every other
/// image as train, updating `tiles` in place. Ties go to the
/// lexicographically smallest image id. Returns the test images sorted.
std::vector<ImageKey> select_test_images(std::vector<TileRecord>& tiles,
                                         ImageScore score = ImageScore::kMeanTileEntropy);

}  // namespace fmars::dataset
