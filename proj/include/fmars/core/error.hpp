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

#pragma once

#include <stdexcept>
#include <string>

namespace fmars {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, invalid parameters, violated preconditions.
/// The CLI maps this to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Failure of a detector/segmenter backend. The CLI maps this to exit code 2.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, bool retryable)
      : Error(what), retryable_(retryable) {}

  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

/// The backend answered, but the answer violates the wire protocol.
class ProtocolError : public BackendError {
 public:
  explicit ProtocolError(const std::string& what)
      : BackendError("protocol error: " + what, false) {}
};

}  // namespace fmars
