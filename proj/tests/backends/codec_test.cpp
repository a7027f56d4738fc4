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


#include <random>

#include <gtest/gtest.h>

#include "fmars/backends/base64.hpp"
#include "fmars/backends/hash.hpp"
#include "fmars/core/error.hpp"

namespace fmars::backends {
namespace {

std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

TEST(Base64, Rfc4648Vectors) {
  const std::pair<const char*, const char*> vectors[] = {
      {"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},        {"foo", "Zm9v"},
      {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"}};
  for (auto [plain, enc] : vectors) {
    EXPECT_EQ(base64_encode(bytes(plain)), enc);
    EXPECT_EQ(base64_decode(enc), bytes(plain));
  }
}

TEST(Base64, RandomRoundTrip) {
  std::mt19937 rng(5);
  for (int n = 0; n < 200; ++n) {
    std::vector<std::uint8_t> data(static_cast<std::size_t>(n));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(base64_decode(base64_encode(data)), data);
  }
}

TEST(Base64, RejectsMalformed) {
  EXPECT_THROW(base64_decode("abc"), ProtocolError);
  EXPECT_THROW(base64_decode("ab!d"), ProtocolError);
  EXPECT_THROW(base64_decode("a=bc"), ProtocolError);
  EXPECT_THROW(base64_decode("Zg==Zm9v"), ProtocolError);
}

TEST(Hash, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(bytes("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64(bytes("a")), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64(bytes("foobar")), 0x85944171f73967e8ULL);
}

TEST(Hash, TileHashDependsOnShapeAndPixels) {
  geo::RgbImage a(4, 2), b(2, 4);
  EXPECT_NE(tile_hash(a), tile_hash(b));
  EXPECT_EQ(tile_hash(a).size(), 16u);
  geo::RgbImage c = a;
  EXPECT_EQ(tile_hash(a), tile_hash(c));
  c.data[5] = 1;
  EXPECT_NE(tile_hash(a), tile_hash(c));
}

}  // namespace
}  // namespace fmars::backends
