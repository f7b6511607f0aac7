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

#include "asrbench/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <string>

namespace asrbench::log {
namespace {

std::atomic<Level> g_level{Level::kWarn};
std::mutex g_mutex;

std::string_view level_name(Level l) {
  switch (l) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
    case Level::kOff: break;
  }
  return "off";
}

void append_quoted(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

void set_level(Level l) noexcept { g_level.store(l); }
Level level() noexcept { return g_level.load(); }

void write(Level l, std::string_view component, std::string_view recording_id,
           std::string_view message) {
  if (l < g_level.load() || l == Level::kOff) return;
  std::string line = "level=";
  line += level_name(l);
  line += " component=";
  line += component;
  if (!recording_id.empty()) {
    line += " recording=";
    line += recording_id;
  }
  line += " msg=";
  append_quoted(line, message);
  line.push_back('\n');
  std::lock_guard lock(g_mutex);
  std::fputs(line.c_str(), stderr);
}

}  // namespace asrbench::log
