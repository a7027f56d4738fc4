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


// JSON messages of the detector/segmenter HTTP protocol.
//
//   POST /v1/detect   DetectRequestMsg  -> DetectResponseMsg
//   POST /v1/segment  SegmentRequestMsg -> SegmentResponseMsg
//   GET  /v1/health                     -> HealthMsg
//   errors (400/503)                    -> ErrorMsg
//
// Coordinates are tile-local pixels; masks use the geo RLE convention.
// Decoders throw ProtocolError on any schema violation.

#pragma once

#include <string>
#include <vector>

#include "fmars/backends/backend.hpp"
#include "json.hpp"

namespace fmars::backends::protocol {

inline constexpr const char* kDetectPath = "/v1/detect";
inline constexpr const char* kSegmentPath = "/v1/segment";
inline constexpr const char* kHealthPath = "/v1/health";

struct DetectRequestMsg {
  std::string image_png_b64;
  std::string prompt;
  double box_threshold = 0.0;
  double text_threshold = 0.0;
  friend bool operator==(const DetectRequestMsg&, const DetectRequestMsg&) = default;
};

struct DetectResponseMsg {
  std::vector<geo::ScoredBox> boxes;
  friend bool operator==(const DetectResponseMsg&, const DetectResponseMsg&) = default;
};

struct SegmentRequestMsg {
  std::string image_png_b64;
  std::vector<geo::PixelBox> boxes;
  bool multimask = false;
  friend bool operator==(const SegmentRequestMsg&, const SegmentRequestMsg&) = default;
};

/// One already-resolved mask per request box.
struct SegmentResponseMsg {
  std::vector<SegmentedMask> results;
  friend bool operator==(const SegmentResponseMsg&, const SegmentResponseMsg&) = default;
};

struct HealthMsg {
  std::string status;
  std::vector<std::string> models;
  friend bool operator==(const HealthMsg&, const HealthMsg&) = default;
};

struct ErrorMsg {
  std::string error;
  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

nlohmann::json encode(const DetectRequestMsg& msg);
nlohmann::json encode(const DetectResponseMsg& msg);
nlohmann::json encode(const SegmentRequestMsg& msg);
nlohmann::json encode(const SegmentResponseMsg& msg);
nlohmann::json encode(const HealthMsg& msg);
nlohmann::json encode(const ErrorMsg& msg);

DetectRequestMsg decode_detect_request(const nlohmann::json& j);
DetectResponseMsg decode_detect_response(const nlohmann::json& j);
SegmentRequestMsg decode_segment_request(const nlohmann::json& j);
/// Also rejects RLE runs whose sum differs from height * width.
SegmentResponseMsg decode_segment_response(const nlohmann::json& j);
HealthMsg decode_health(const nlohmann::json& j);
ErrorMsg decode_error(const nlohmann::json& j);

/// Parses a body; ProtocolError on malformed JSON.
nlohmann::json parse_body(const std::string& body);

/// Domain <-> wire conversion (PNG + base64 for tiles).
DetectRequestMsg to_wire(const DetectorRequest& req);
SegmentRequestMsg to_wire(const SegmentRequest& req);
DetectorRequest from_wire(const DetectRequestMsg& msg);
SegmentRequest from_wire(const SegmentRequestMsg& msg);

}  // namespace fmars::backends::protocol
