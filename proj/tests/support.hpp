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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "asrbench/error.hpp"
#include "asrbench/textnorm.hpp"
#include "asrbench/util.hpp"
#include "asrbench/wav.hpp"

namespace testing {

inline std::filesystem::path fixture_dir() { return ASRBENCH_FIXTURE_DIR; }

// Creates a fresh directory under the system temp dir and removes it on exit.
class TempDir {
 public:
  TempDir() {
    std::string templ = (std::filesystem::temp_directory_path() / "asrbench-XXXXXX").string();
    if (!mkdtemp(templ.data())) throw std::runtime_error("mkdtemp failed");
    path_ = templ;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline asrbench::TokenSequence toks(std::string_view text) { return asrbench::normalize(text); }

// Mono 16-bit PCM with a deterministic nonzero ramp.
inline asrbench::Bytes pcm16_wav(std::uint32_t rate, std::size_t frames, std::uint16_t channels = 1) {
  asrbench::Bytes pcm(frames * channels * 2);
  for (std::size_t i = 0; i < pcm.size(); ++i) pcm[i] = static_cast<std::uint8_t>(i * 7 + 3);
  return asrbench::make_wav(channels, rate, 16, pcm);
}

template <typename Fn>
asrbench::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const asrbench::Error& e) {
    return e.code();
  }
  return static_cast<asrbench::ErrorCode>(0);
}

}  // namespace testing
