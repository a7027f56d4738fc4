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

#include "fmars/geo/rle.hpp"

#include <algorithm>
#include <string>

#include "fmars/core/error.hpp"

namespace fmars::geo {

MaskRLE rle_encode(const BinaryMask& mask) {
  MaskRLE rle{mask.height, mask.width, {}};
  std::uint8_t value = 0;
  std::uint32_t run = 0;
  for (std::uint8_t px : mask.data) {
    const std::uint8_t bit = px ? 1 : 0;
    if (bit != value) {
      rle.counts.push_back(run);
      run = 0;
      value = bit;
    }
    ++run;
  }
  rle.counts.push_back(run);
  return rle;
}

BinaryMask rle_decode(const MaskRLE& rle) {
  if (rle.height <= 0 || rle.width <= 0) {
    throw InputError("RLE mask dimensions must be positive");
  }
  const std::uint64_t expected =
      static_cast<std::uint64_t>(rle.height) * static_cast<std::uint64_t>(rle.width);
  std::uint64_t total = 0;
  for (std::uint32_t c : rle.counts) total += c;
  if (total != expected) {
    throw InputError("RLE counts sum to " + std::to_string(total) + ", expected " +
                     std::to_string(expected));
  }
  BinaryMask mask(rle.width, rle.height);
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::uint32_t c : rle.counts) {
    if (value) std::fill_n(mask.data.begin() + pos, c, std::uint8_t{1});
    pos += c;
    value ^= 1;
  }
  return mask;
}

std::uint64_t rle_area(const MaskRLE& rle) {
  std::uint64_t area = 0;
  for (std::size_t i = 1; i < rle.counts.size(); i += 2) area += rle.counts[i];
  return area;
}

}  // namespace fmars::geo
