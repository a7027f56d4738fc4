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


#include "fmars/backends/remote.hpp"

#include <semaphore>
#include <thread>

#include "fmars/core/error.hpp"
#include "fmars/core/log.hpp"
#include "httplib.h"

namespace fmars::backends {

using nlohmann::json;

struct RemoteBackend::State {
  explicit State(int slots) : in_flight(slots) {}
  mutable std::counting_semaphore<1024> in_flight;
};

namespace {

class SemaphoreSlot {
 public:
  explicit SemaphoreSlot(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~SemaphoreSlot() { sem_.release(); }
  SemaphoreSlot(const SemaphoreSlot&) = delete;
  SemaphoreSlot& operator=(const SemaphoreSlot&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

std::string error_text(const httplib::Result& res) {
  try {
    return protocol::decode_error(json::parse(res->body)).error;
  } catch (const std::exception&) {
    return res->body.substr(0, 200);
  }
}

}  // namespace

RemoteBackend::RemoteBackend(RemoteOptions opts) : opts_(std::move(opts)) {
  if (opts_.url.empty()) throw InputError("remote backend needs a URL");
  if (opts_.max_in_flight < 1 || opts_.max_in_flight > 1024) {
    throw InputError("max_in_flight must be in [1,1024]");
  }
  if (opts_.attempts < 1) throw InputError("attempts must be >= 1");
  if (opts_.timeout.count() <= 0) throw InputError("timeout must be positive");
  state_ = std::make_unique<State>(opts_.max_in_flight);
}

RemoteBackend::~RemoteBackend() = default;

json RemoteBackend::call(const char* method, const char* path, const json* body) const {
  std::chrono::milliseconds backoff = opts_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    std::string failure;
    {
      SemaphoreSlot slot(state_->in_flight);
      httplib::Client client(opts_.url);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(opts_.timeout);
      const auto usecs =
          std::chrono::duration_cast<std::chrono::microseconds>(opts_.timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      httplib::Result res = body ? client.Post(path, body->dump(), "application/json")
                                 : client.Get(path);
      if (!res) {
        failure = std::string("request failed: ") + httplib::to_string(res.error());
      } else if (res->status == 200) {
        return protocol::parse_body(res->body);
      } else if (res->status == 400) {
        throw InputError(std::string("backend rejected ") + path + ": " + error_text(res));
      } else if (res->status >= 500) {
        failure = "HTTP " + std::to_string(res->status) + ": " + error_text(res);
      } else {
        throw BackendError(std::string("unexpected HTTP ") + std::to_string(res->status) +
                               " from " + path,
                           false);
      }
    }
    if (attempt >= opts_.attempts) {
      throw BackendError(std::string(method) + " " + path + " failed after " +
                             std::to_string(attempt) + " attempts: " + failure,
                         true);
    }
    log::warn("backend retry", {{"path", path}, {"attempt", attempt}, {"reason", failure},
                                {"backoff_ms", backoff.count()}});
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

std::vector<geo::ScoredBox> RemoteBackend::detect(const DetectorRequest& req) const {
  req.validate();
  const json body = protocol::encode(protocol::to_wire(req));
  return protocol::decode_detect_response(call("POST", protocol::kDetectPath, &body)).boxes;
}

SegmentResult RemoteBackend::segment(const SegmentRequest& req) const {
  if (req.boxes.empty()) throw InputError("segment request without boxes");
  const json body = protocol::encode(protocol::to_wire(req));
  auto msg = protocol::decode_segment_response(call("POST", protocol::kSegmentPath, &body));
  if (msg.results.size() != req.boxes.size()) {
    throw ProtocolError("segment response has " + std::to_string(msg.results.size()) +
                        " results for " + std::to_string(req.boxes.size()) + " boxes");
  }
  for (const SegmentedMask& m : msg.results) {
    if (m.mask.height != req.tile.height || m.mask.width != req.tile.width) {
      throw ProtocolError("segment mask size does not match the tile");
    }
  }
  return {std::move(msg.results)};
}

protocol::HealthMsg RemoteBackend::health() const {
  return protocol::decode_health(call("GET", protocol::kHealthPath, nullptr));
}

}  // namespace fmars::backends
