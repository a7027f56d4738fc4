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


#include "fmars/backends/protocol.hpp"

#include <cmath>
#include <numeric>

#include "fmars/backends/base64.hpp"
#include "fmars/core/error.hpp"
#include "fmars/ingest/png.hpp"

namespace fmars::backends::protocol {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ProtocolError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ProtocolError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ProtocolError(std::string("field '") + key + "' is not a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ProtocolError(std::string("field '") + key + "' is not finite");
  return d;
}

double unit_number(const json& j, const char* key) {
  const double d = number(j, key);
  if (d < 0.0 || d > 1.0) throw ProtocolError(std::string("field '") + key + "' outside [0,1]");
  return d;
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

const json& array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw ProtocolError(std::string("field '") + key + "' is not an array");
  return v;
}

geo::PixelBox decode_box(const json& j) {
  geo::PixelBox b{number(j, "x0"), number(j, "y0"), number(j, "x1"), number(j, "y1")};
  if (!b.valid()) throw ProtocolError("degenerate box");
  return b;
}

json encode_box(const geo::PixelBox& b) {
  return {{"x0", b.x0}, {"y0", b.y0}, {"x1", b.x1}, {"y1", b.y1}};
}

geo::MaskRLE decode_rle(const json& j) {
  const json& size = array(j, "size");
  if (size.size() != 2 || !size[0].is_number_integer() || !size[1].is_number_integer()) {
    throw ProtocolError("rle size must be [height, width]");
  }
  geo::MaskRLE rle;
  rle.height = size[0].get<int>();
  rle.width = size[1].get<int>();
  if (rle.height <= 0 || rle.width <= 0) throw ProtocolError("rle size must be positive");
  std::uint64_t sum = 0;
  for (const json& c : array(j, "counts")) {
    if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<std::int64_t>() >= 0)) {
      throw ProtocolError("rle counts must be non-negative integers");
    }
    const std::uint64_t v = c.get<std::uint64_t>();
    if (v > 0xffffffffULL) throw ProtocolError("rle count overflows 32 bits");
    rle.counts.push_back(static_cast<std::uint32_t>(v));
    sum += v;
  }
  const std::uint64_t expected = static_cast<std::uint64_t>(rle.height) * rle.width;
  if (sum != expected) {
    throw ProtocolError("rle counts sum to " + std::to_string(sum) + ", expected " +
                        std::to_string(expected));
  }
  return rle;
}

}  // namespace

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed JSON body: ") + e.what());
  }
}

json encode(const DetectRequestMsg& m) {
  return {{"image_png_b64", m.image_png_b64},
          {"prompt", m.prompt},
          {"box_threshold", m.box_threshold},
          {"text_threshold", m.text_threshold}};
}

json encode(const DetectResponseMsg& m) {
  json boxes = json::array();
  for (const geo::ScoredBox& b : m.boxes) {
    json e = encode_box(b.box);
    e["score"] = b.score;
    e["phrase"] = b.phrase;
    boxes.push_back(std::move(e));
  }
  return {{"boxes", std::move(boxes)}};
}

json encode(const SegmentRequestMsg& m) {
  json boxes = json::array();
  for (const geo::PixelBox& b : m.boxes) boxes.push_back(encode_box(b));
  return {{"image_png_b64", m.image_png_b64}, {"boxes", std::move(boxes)},
          {"multimask", m.multimask}};
}

json encode(const SegmentResponseMsg& m) {
  json results = json::array();
  for (const SegmentedMask& r : m.results) {
    results.push_back({{"rle", {{"size", {r.mask.height, r.mask.width}}, {"counts", r.mask.counts}}},
                       {"score", r.confidence}});
  }
  return {{"results", std::move(results)}};
}

json encode(const HealthMsg& m) { return {{"status", m.status}, {"models", m.models}}; }

json encode(const ErrorMsg& m) { return {{"error", m.error}}; }

DetectRequestMsg decode_detect_request(const json& j) {
  return {text(j, "image_png_b64"), text(j, "prompt"), unit_number(j, "box_threshold"),
          unit_number(j, "text_threshold")};
}

DetectResponseMsg decode_detect_response(const json& j) {
  DetectResponseMsg m;
  for (const json& e : array(j, "boxes")) {
    m.boxes.push_back({decode_box(e), unit_number(e, "score"), text(e, "phrase")});
  }
  return m;
}

SegmentRequestMsg decode_segment_request(const json& j) {
  SegmentRequestMsg m;
  m.image_png_b64 = text(j, "image_png_b64");
  for (const json& e : array(j, "boxes")) m.boxes.push_back(decode_box(e));
  const json& mm = field(j, "multimask");
  if (!mm.is_boolean()) throw ProtocolError("field 'multimask' is not a boolean");
  m.multimask = mm.get<bool>();
  return m;
}

SegmentResponseMsg decode_segment_response(const json& j) {
  SegmentResponseMsg m;
  for (const json& e : array(j, "results")) {
    m.results.push_back({decode_rle(field(e, "rle")), unit_number(e, "score")});
  }
  return m;
}

HealthMsg decode_health(const json& j) {
  HealthMsg m;
  m.status = text(j, "status");
  for (const json& e : array(j, "models")) {
    if (!e.is_string()) throw ProtocolError("model names must be strings");
    m.models.push_back(e.get<std::string>());
  }
  return m;
}

ErrorMsg decode_error(const json& j) { return {text(j, "error")}; }

DetectRequestMsg to_wire(const DetectorRequest& req) {
  return {base64_encode(ingest::encode_png_rgb(req.tile)), req.prompt, req.box_threshold,
          req.text_threshold};
}

SegmentRequestMsg to_wire(const SegmentRequest& req) {
  return {base64_encode(ingest::encode_png_rgb(req.tile)), req.boxes, req.multimask};
}

DetectorRequest from_wire(const DetectRequestMsg& msg) {
  return {ingest::decode_png_rgb(base64_decode(msg.image_png_b64)), msg.prompt,
          msg.box_threshold, msg.text_threshold};
}

SegmentRequest from_wire(const SegmentRequestMsg& msg) {
  return make_segment_request(ingest::decode_png_rgb(base64_decode(msg.image_png_b64)),
                              msg.boxes, msg.multimask);
}

}  // namespace fmars::backends::protocol
