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

// Transcript normalization: raw reference or vendor text in, canonical
// lowercase word tokens out. Everything downstream compares these tokens, so
// formatting differences (case, punctuation, vendor tags, speaker stamps)
// never count as recognition errors.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace asrbench {

enum class TranscriptSource { kReference, kVendorOutput };

struct RawTranscript {
  std::string text;  // UTF-8, may be empty
  TranscriptSource source = TranscriptSource::kReference;
  std::optional<std::string> vendor;
};

/// Ordered word tokens. Each token is nonempty and consists only of
/// letters, digits, apostrophes and hyphens.
class TokenSequence {
 public:
  TokenSequence() = default;
  explicit TokenSequence(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const noexcept { return tokens_.begin(); }
  auto end() const noexcept { return tokens_.end(); }

  TokenSequence slice(std::size_t first, std::size_t count) const;
  std::string join(std::string_view sep = " ") const;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;

 private:
  std::vector<std::string> tokens_;
};

inline constexpr std::string_view kDefaultSpeakerStampPattern =
    R"(^[ \t]*(?:speaker[ \t]*)?\d+[ \t:,-]*(?:\d{1,2}:)?\d{1,2}:\d{2}(?:[.,]\d+)?[ \t]*)";

struct NormalizationConfig {
  bool strip_vendor_tags = true;
  bool strip_leading_speaker_stamp = true;
  /// ECMAScript regex matched case-insensitively at the start of the first
  /// line; the match is removed once.
  std::string speaker_stamp_pattern{kDefaultSpeakerStampPattern};
  /// Whole-token replacements applied after tokenization ("1" -> "one").
  /// Absent by default: digits are scored as written.
  std::optional<std::map<std::string, std::string>> digit_word_map;
  std::set<std::string> filler_tokens{"um", "uh"};

  /// Throws Error(kInvalidArgument) if filler_tokens is empty or the stamp
  /// pattern does not compile.
  void validate() const;
};

TokenSequence normalize(const RawTranscript& raw,
                        const NormalizationConfig& config = {});

inline TokenSequence normalize(std::string_view text,
                               const NormalizationConfig& config = {}) {
  return normalize(RawTranscript{std::string(text), TranscriptSource::kReference, std::nullopt}, config);
}

/// Parses a digit map file: one "<digits> <words...>" entry per line,
/// '#' starts a comment.
std::map<std::string, std::string> parse_digit_map(std::string_view text);

}  // namespace asrbench
