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

#include "asrbench/textnorm.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf16.h>

#include <regex>
#include <sstream>

#include "asrbench/error.hpp"

namespace asrbench {
namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) fail(ErrorCode::kInternal, "ICU NFC unavailable");
    return n;
  }();
  return *instance;
}

icu::UnicodeString to_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) fail(ErrorCode::kInternal, "NFC normalization failed");
  return out;
}

bool is_apostrophe(UChar32 c) {
  return c == u'\'' || c == 0x2019 || c == 0x2018 || c == 0x02BC || c == 0xFF07;
}

bool is_hyphen(UChar32 c) { return c == u'-' || c == 0x2010 || c == 0x2011; }

// Dashes used between words (em or en dash) separate tokens.
bool is_separator(UChar32 c) {
  return u_isUWhiteSpace(c) || (c >= 0x2012 && c <= 0x2015) || c == 0x2E3A || c == 0x2E3B;
}

std::string strip_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      const std::size_t close = text.find_first_of("<>", i + 1);
      if (close != std::string_view::npos && text[close] == '>') {
        out.push_back(' ');
        i = close + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string strip_speaker_stamp(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern, std::regex::ECMAScript | std::regex::icase);
  std::smatch m;
  if (std::regex_search(text, m, re, std::regex_constants::match_continuous) &&
      m.length(0) > 0)
    return text.substr(static_cast<std::size_t>(m.length(0)));
  return text;
}

// One pass of NFC, lowercase, character filtering and edge trimming.
std::vector<std::string> tokenize_pass(const icu::UnicodeString& input) {
  icu::UnicodeString s = to_nfc(input);
  s.toLower(icu::Locale::getRoot());
  s = to_nfc(s);

  icu::UnicodeString filtered;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c;
    U16_NEXT(s.getBuffer(), i, s.length(), c);
    if (is_separator(c))
      filtered.append(static_cast<UChar32>(u' '));
    else if (is_apostrophe(c))
      filtered.append(static_cast<UChar32>(u'\''));
    else if (is_hyphen(c))
      filtered.append(static_cast<UChar32>(u'-'));
    else if (u_isalpha(c) || u_isdigit(c))
      filtered.append(c);
    // everything else is punctuation or a symbol and is dropped in place
  }
  std::string utf8;
  filtered.toUTF8String(utf8);

  std::vector<std::string> tokens;
  std::istringstream words(utf8);
  std::string w;
  while (words >> w) {
    const auto first = w.find_first_not_of("'-");
    if (first == std::string::npos) continue;
    const auto last = w.find_last_not_of("'-");
    tokens.push_back(w.substr(first, last - first + 1));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens =
      tokenize_pass(icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(),
                                                                  static_cast<int32_t>(text.size()))));
  // Dropping characters can bring together code points that compose under
  // NFC, so repeat until the output is a fixpoint.
  for (int iter = 0; iter < 8; ++iter) {
    const std::string joined = join_tokens(tokens);
    std::vector<std::string> again = tokenize_pass(icu::UnicodeString::fromUTF8(joined));
    if (again == tokens) break;
    tokens = std::move(again);
  }
  return tokens;
}

}  // namespace

TokenSequence TokenSequence::slice(std::size_t first, std::size_t count) const {
  if (first > tokens_.size()) first = tokens_.size();
  count = std::min(count, tokens_.size() - first);
  return TokenSequence(std::vector<std::string>(tokens_.begin() + first,
                                                tokens_.begin() + first + count));
}

std::string TokenSequence::join(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += sep;
    out += tokens_[i];
  }
  return out;
}

void NormalizationConfig::validate() const {
  if (filler_tokens.empty())
    fail(ErrorCode::kInvalidArgument, "filler token set must not be empty");
  if (strip_leading_speaker_stamp) {
    try {
      std::regex re(speaker_stamp_pattern, std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error& e) {
      fail(ErrorCode::kInvalidArgument,
           std::string("invalid speaker stamp pattern: ") + e.what());
    }
  }
}

TokenSequence normalize(const RawTranscript& raw, const NormalizationConfig& config) {
  std::string text = raw.text;
  if (config.strip_leading_speaker_stamp)
    text = strip_speaker_stamp(text, config.speaker_stamp_pattern);
  if (config.strip_vendor_tags) text = strip_tags(text);

  std::vector<std::string> tokens = tokenize(text);
  if (!config.digit_word_map || config.digit_word_map->empty())
    return TokenSequence(std::move(tokens));

  std::vector<std::string> mapped;
  mapped.reserve(tokens.size());
  for (auto& t : tokens) {
    auto it = config.digit_word_map->find(t);
    if (it == config.digit_word_map->end()) {
      mapped.push_back(std::move(t));
      continue;
    }
    for (auto& w : tokenize(it->second)) mapped.push_back(std::move(w));
  }
  return TokenSequence(std::move(mapped));
}

std::map<std::string, std::string> parse_digit_map(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    std::string words, w;
    while (fields >> w) {
      if (!words.empty()) words.push_back(' ');
      words += w;
    }
    if (words.empty())
      fail(ErrorCode::kParse, "digit map line " + std::to_string(lineno) + ": missing words");
    out[key] = words;
  }
  return out;
}

}  // namespace asrbench
