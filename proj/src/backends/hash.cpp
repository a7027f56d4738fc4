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


#include "fmars/backends/hash.hpp"

#include <array>

#include <fmt/format.h>

namespace fmars::backends {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string tile_hash(const geo::RgbImage& tile) {
  std::array<std::uint8_t, 8> dims{};
  for (int k = 0; k < 4; ++k) {
    dims[k] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(tile.width) >> (8 * k));
    dims[4 + k] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(tile.height) >> (8 * k));
  }
  const std::uint64_t h = fnv1a64(tile.data, fnv1a64(dims));
  return fmt::format("{:016x}", h);
}

}  // namespace fmars::backends
