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

// Structured logging: one JSON object per line on stderr.

#pragma once

#include <string_view>

#include "json.hpp"

namespace fmars::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

void set_level(Level level);
Level level();

/// Emits {"ts":..., "level":..., "msg":..., <fields>} if `lvl` is enabled.
/// Thread-safe; lines from concurrent callers never interleave.
void emit(Level lvl, std::string_view msg, const nlohmann::json& fields = {});

inline void debug(std::string_view msg, const nlohmann::json& fields = {}) {
  emit(Level::kDebug, msg, fields);
}
inline void info(std::string_view msg, const nlohmann::json& fields = {}) {
  emit(Level::kInfo, msg, fields);
}
inline void warn(std::string_view msg, const nlohmann::json& fields = {}) {
  emit(Level::kWarn, msg, fields);
}
inline void error(std::string_view msg, const nlohmann::json& fields = {}) {
  emit(Level::kError, msg, fields);
}

}  // namespace fmars::log
