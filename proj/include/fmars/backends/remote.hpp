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


// HTTP client for an inference service speaking the protocol in protocol.hpp.

#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "fmars/backends/backend.hpp"
#include "fmars/backends/protocol.hpp"

namespace fmars::backends {

struct RemoteOptions {
  std::string url;  // e.g. "http://127.0.0.1:8080"
  std::chrono::milliseconds timeout{120'000};
  int max_in_flight = 4;
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};  // doubled per retry
};

/// Thread-safe. Error mapping: HTTP 400 -> InputError; 503, other 5xx,
/// connection failures and timeouts -> retryable BackendError (retried with
/// exponential backoff); malformed responses -> ProtocolError.
class RemoteBackend final : public Detector, public Segmenter {
 public:
  explicit RemoteBackend(RemoteOptions opts);
  ~RemoteBackend() override;

  std::vector<geo::ScoredBox> detect(const DetectorRequest& req) const override;
  SegmentResult segment(const SegmentRequest& req) const override;
  protocol::HealthMsg health() const;

  const RemoteOptions& options() const { return opts_; }

 private:
  struct State;
  nlohmann::json call(const char* method, const char* path, const nlohmann::json* body) const;

  RemoteOptions opts_;
  std::unique_ptr<State> state_;
};

}  // namespace fmars::backends
