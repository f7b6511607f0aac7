// Copyright 2026 The asrbench Authors
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

#include <string_view>

namespace asrbench::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

void set_level(Level level) noexcept;
Level level() noexcept;

/// One line on stderr:
///   level=warn component=backends recording=NCC msg="..."
void write(Level level, std::string_view component, std::string_view recording_id,
           std::string_view message);

inline void info(std::string_view component, std::string_view msg,
                 std::string_view recording_id = {}) {
  write(Level::kInfo, component, recording_id, msg);
}
inline void warn(std::string_view component, std::string_view msg,
                 std::string_view recording_id = {}) {
  write(Level::kWarn, component, recording_id, msg);
}
inline void error(std::string_view component, std::string_view msg,
                  std::string_view recording_id = {}) {
  write(Level::kError, component, recording_id, msg);
}

}  // namespace asrbench::log
