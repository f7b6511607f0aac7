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

#include "asrbench/corpus.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "asrbench/textnorm.hpp"
#include "asrbench/util.hpp"

namespace asrbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Gender g) noexcept { return g == Gender::kFemale ? "F" : "M"; }

std::string_view to_string(SpeechType t) noexcept {
  return t == SpeechType::kRead ? "read" : "spontaneous";
}

Gender parse_gender(std::string_view s) {
  if (s == "F" || s == "f") return Gender::kFemale;
  if (s == "M" || s == "m") return Gender::kMale;
  fail(ErrorCode::kParse, "gender must be F or M, got '" + std::string(s) + "'");
}

SpeechType parse_speech_type(std::string_view s) {
  if (s == "read") return SpeechType::kRead;
  if (s == "spontaneous") return SpeechType::kSpontaneous;
  fail(ErrorCode::kParse, "speech_type must be read or spontaneous, got '" + std::string(s) + "'");
}

const Speaker* Manifest::find_speaker(std::string_view id) const {
  for (const auto& s : speakers)
    if (s.id == id) return &s;
  return nullptr;
}

const Recording* Manifest::find_recording(std::string_view id) const {
  for (const auto& r : recordings)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty())
    fail(ErrorCode::kParse, where + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return (path.is_absolute() || base.empty()) ? path : base / path;
}

}  // namespace

Manifest parse_manifest(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("speakers") || !doc["speakers"].is_array())
    fail(ErrorCode::kParse, "manifest: 'speakers' array required");
  if (doc.contains("recordings") && !doc["recordings"].is_array())
    fail(ErrorCode::kParse, "manifest: 'recordings' must be an array");

  Manifest m;
  std::unordered_set<std::string> speaker_ids;
  for (std::size_t i = 0; i < doc["speakers"].size(); ++i) {
    const json& s = doc["speakers"][i];
    const std::string where = "speakers[" + std::to_string(i) + "]";
    if (!s.is_object()) fail(ErrorCode::kParse, where + ": object expected");
    Speaker sp;
    sp.id = require_string(s, "id", where);
    sp.l1 = require_string(s, "l1", where);
    sp.gender = parse_gender(require_string(s, "gender", where));
    if (!speaker_ids.insert(sp.id).second)
      fail(ErrorCode::kIntegrity, "duplicate speaker id '" + sp.id + "'");
    m.speakers.push_back(std::move(sp));
  }

  std::unordered_set<std::string> recording_ids;
  const json recordings = doc.value("recordings", json::array());
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    const json& r = recordings[i];
    const std::string where = "recordings[" + std::to_string(i) + "]";
    if (!r.is_object()) fail(ErrorCode::kParse, where + ": object expected");
    Recording rec;
    rec.speaker_id = require_string(r, "speaker_id", where);
    rec.audio_path = resolve(base_dir, require_string(r, "audio_path", where));
    rec.reference_path = resolve(base_dir, require_string(r, "reference_path", where));
    rec.speech_type = parse_speech_type(require_string(r, "speech_type", where));
    auto d = r.find("duration_s");
    if (d == r.end() || !d->is_number())
      fail(ErrorCode::kParse, where + ": numeric 'duration_s' required");
    rec.duration_s = d->get<double>();
    if (!(rec.duration_s > 0.0) || !std::isfinite(rec.duration_s))
      fail(ErrorCode::kIntegrity, where + ": duration_s must be positive");
    if (auto id = r.find("id"); id != r.end()) {
      if (!id->is_string() || id->get<std::string>().empty())
        fail(ErrorCode::kParse, where + ": 'id' must be a nonempty string");
      rec.id = id->get<std::string>();
    } else {
      rec.id = fs::path(require_string(r, "audio_path", where)).stem().string();
    }
    if (!speaker_ids.count(rec.speaker_id))
      fail(ErrorCode::kIntegrity,
           where + ": unknown speaker_id '" + rec.speaker_id + "'");
    if (!recording_ids.insert(rec.id).second)
      fail(ErrorCode::kIntegrity, "duplicate recording id '" + rec.id + "'");
    m.recordings.push_back(std::move(rec));
  }
  return m;
}

Manifest load_manifest(const fs::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

Wordlist::Wordlist(const std::vector<std::string>& entries) {
  for (const auto& e : entries)
    for (const auto& tok : normalize(e)) entries_.insert(tok);
  if (entries_.empty()) fail(ErrorCode::kInvalidArgument, "wordlist is empty");
}

Wordlist Wordlist::parse(std::string_view text) {
  std::vector<std::string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    entries.push_back(line);
  }
  return Wordlist(entries);
}

Wordlist Wordlist::load(const fs::path& path) { return parse(read_text_file(path)); }

bool Wordlist::contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }

std::vector<std::string> filter_sentences(const std::vector<std::string>& prompts,
                                          const Wordlist& wordlist) {
  std::vector<std::string> kept;
  for (const auto& p : prompts) {
    const TokenSequence tokens = normalize(p);
    if (tokens.empty()) continue;
    bool all = true;
    for (const auto& t : tokens) {
      if (!wordlist.contains(t)) {
        all = false;
        break;
      }
    }
    if (all) kept.push_back(p);
  }
  return kept;
}

std::vector<std::string> read_lines(const fs::path& path, bool skip_comments) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_comments && !line.empty() && line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace asrbench
