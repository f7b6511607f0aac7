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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "asrbench/error.hpp"

namespace asrbench {

enum class Gender { kFemale, kMale };
enum class SpeechType { kRead, kSpontaneous };

std::string_view to_string(Gender g) noexcept;       // "F" / "M"
std::string_view to_string(SpeechType t) noexcept;   // "read" / "spontaneous"
Gender parse_gender(std::string_view s);
SpeechType parse_speech_type(std::string_view s);

struct Speaker {
  std::string id;
  std::string l1;
  Gender gender = Gender::kFemale;
};

struct Recording {
  std::string id;  // manifest "id", or the audio file stem
  std::string speaker_id;
  std::filesystem::path audio_path;
  double duration_s = 0.0;
  std::filesystem::path reference_path;
  SpeechType speech_type = SpeechType::kRead;
};

struct Manifest {
  std::vector<Speaker> speakers;
  std::vector<Recording> recordings;

  /// nullptr when absent.
  const Speaker* find_speaker(std::string_view id) const;
  const Recording* find_recording(std::string_view id) const;
};

/// Parses and validates a manifest document. Relative audio/reference paths
/// are resolved against base_dir.
Manifest parse_manifest(std::string_view json_text,
                        const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);

class Wordlist {
 public:
  /// Entries are normalized; throws kInvalidArgument if none remain.
  explicit Wordlist(const std::vector<std::string>& entries);

  /// One word per line, '#' starts a comment.
  static Wordlist parse(std::string_view text);
  static Wordlist load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::set<std::string, std::less<>> entries_;
};

/// Keeps the sentences whose every normalized token is in the wordlist.
/// Sentences that normalize to no tokens are dropped.
std::vector<std::string> filter_sentences(const std::vector<std::string>& prompts,
                                          const Wordlist& wordlist);

/// Non-empty, non-comment lines of a UTF-8 text file.
std::vector<std::string> read_lines(const std::filesystem::path& path,
                                    bool skip_comments = false);

/// k distinct items chosen by a partial Fisher-Yates shuffle driven by
/// std::mt19937_64 seeded with `seed`. Indices are drawn with an explicit
/// modulo-rejection step so the result does not depend on the standard
/// library's distribution implementation.
template <typename T>
std::vector<T> sample(const std::vector<T>& items, std::size_t k, std::uint64_t seed) {
  if (k > items.size())
    fail(ErrorCode::kInvalidArgument,
         "sample size " + std::to_string(k) + " exceeds population " +
             std::to_string(items.size()));
  std::vector<std::size_t> idx(items.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t span = idx.size() - i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do draw = rng(); while (draw >= limit);
    std::swap(idx[i], idx[i + draw % span]);
  }
  std::vector<T> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(items[idx[i]]);
  return out;
}

}  // namespace asrbench
