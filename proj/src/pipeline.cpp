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

#include "asrbench/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <sstream>

#include "asrbench/align.hpp"
#include "asrbench/disfluency.hpp"
#include "asrbench/log.hpp"
#include "asrbench/metrics.hpp"
#include "asrbench/util.hpp"

namespace asrbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  fail(ErrorCode::kInvalidArgument,
       "option '" + std::string(key) + "': expected " + std::string(want) + ", got '" + std::string(value) + "'");
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "a boolean");
}

template <typename T>
T parse_integer(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) bad_value(key, v, "a number");
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::kConfig, what);
}

}  // namespace

void PipelineOptions::set(std::string_view key, std::string_view value) {
  const std::string v(value);
  if (key == "prompts") prompts = v;
  else if (key == "wordlist") wordlist = v;
  else if (key == "k") sample_size = parse_integer<std::size_t>(key, value);
  else if (key == "seed") seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "manifest") manifest = v;
  else if (key == "backend") backends.push_back(v);
  else if (key == "condition") {
    const auto c = parse_condition(value);
    if (std::find(conditions.begin(), conditions.end(), c) == conditions.end()) conditions.push_back(c);
  } else if (key == "replay") replay = parse_bool(key, value);
  else if (key == "cache-dir") cache_dir = v;
  else if (key == "max-concurrency") {
    max_concurrency = parse_integer<unsigned>(key, value);
    if (max_concurrency == 0) bad_value(key, value, "a positive integer");
  } else if (key == "initial-prompt") initial_prompt = v;
  else if (key == "min-audio-seconds") {
    min_audio_seconds = parse_real(key, value);
    if (*min_audio_seconds < 0) bad_value(key, value, "a non-negative number");
  } else if (key == "timeout") {
    timeout_s = parse_real(key, value);
    if (*timeout_s <= 0) bad_value(key, value, "a positive number of seconds");
  } else if (key == "base-url") base_url = v;
  else if (key == "poll-interval-ms") poll_interval_ms = parse_integer<unsigned>(key, value);
  else if (key == "records") records = v;
  else if (key == "ref-dir") ref_dir = v;
  else if (key == "hyp-dir") hyp_dirs.push_back(v);
  else if (key == "annotations") annotations = v;
  else if (key == "scored-out") scored_out = v;
  else if (key == "group") {
    parse_group_template(value);
    groupings.push_back(v);
  } else if (key == "metric") {
    parse_metric(value);
    metrics.push_back(v);
  } else if (key == "format") format = parse_export_format(value);
  else if (key == "timestamp") timestamp = v;
  else if (key == "out") out = v;
  else if (key == "keep-digits") {
    if (parse_bool(key, value)) normalization.digit_word_map.reset();
  } else if (key == "digit-map") normalization.digit_word_map = parse_digit_map(read_text_file(v));
  else if (key == "strip-tags") normalization.strip_vendor_tags = parse_bool(key, value);
  else if (key == "strip-speaker-stamp") normalization.strip_leading_speaker_stamp = parse_bool(key, value);
  else if (key == "speaker-stamp-pattern") normalization.speaker_stamp_pattern = v;
  else if (key == "filler") {
    if (!custom_fillers) normalization.filler_tokens.clear();
    custom_fillers = true;
    const TokenSequence toks = normalize(value, NormalizationConfig{});
    if (toks.size() != 1) bad_value(key, value, "a single-token filler");
    normalization.filler_tokens.insert(toks[0]);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown option '" + std::string(key) + "'");
  }
}

// ---------------------------------------------------------------------------
// filter-corpus

namespace {

// ARCTIC prompt files wrap each sentence as ( arctic_a0001 "Text." ).
std::string prompt_text(const std::string& line) {
  static const std::regex festival(R"(^\s*\(\s*\S+\s+\"(.*)\"\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(line, m, festival)) return m[1].str();
  return line;
}

}  // namespace

RunSummary cmd_filter_corpus(const PipelineOptions& options) {
  require(!options.prompts.empty(), "filter-corpus needs --prompts");
  require(!options.wordlist.empty(), "filter-corpus needs --wordlist");
  require(!options.out.empty(), "filter-corpus needs --out");

  std::vector<std::string> prompts;
  for (const auto& line : read_lines(options.prompts, true)) prompts.push_back(prompt_text(line));
  const Wordlist wordlist = Wordlist::load(options.wordlist);
  std::vector<std::string> kept = filter_sentences(prompts, wordlist);
  log::info("corpus", std::to_string(kept.size()) + " of " + std::to_string(prompts.size()) +
                          " prompts pass the wordlist");
  if (options.sample_size) kept = sample(kept, *options.sample_size, options.seed);

  std::string text;
  for (const auto& s : kept) text += s + "\n";
  write_file_atomic(options.out, text);
  return {kept.size(), 0};
}

// ---------------------------------------------------------------------------
// transcribe

std::vector<BackendConfig> backend_configs(const PipelineOptions& options) {
  require(!options.backends.empty(), "at least one --backend is required");
  std::vector<DisfluencyCondition> conditions = options.conditions;
  if (conditions.empty()) conditions = {DisfluencyCondition::kOmitted, DisfluencyCondition::kRetained};

  std::vector<BackendConfig> out;
  for (const auto& spec : options.backends) {
    BackendConfig base;
    std::string_view name = spec;
    const bool explicit_replay = name.starts_with("replay:");
    if (explicit_replay) name.remove_prefix(7);
    const BackendId id = parse_backend_id(name);
    if (id == BackendId::kReplay)
      fail(ErrorCode::kConfig, "name the replayed vendor, e.g. replay:deepgram");
    if (explicit_replay || options.replay) {
      base.backend = BackendId::kReplay;
      base.replay_source = id;
    } else {
      base.backend = id;
    }
    base.max_concurrency = options.max_concurrency;
    if (options.initial_prompt && base.vendor() == BackendId::kWhisperReplicate)
      base.initial_prompt = options.initial_prompt;
    base.min_audio_seconds = options.min_audio_seconds;
    if (options.timeout_s) base.timeout = std::chrono::duration<double>(*options.timeout_s);
    base.base_url = options.base_url;
    if (options.poll_interval_ms) base.poll_interval = std::chrono::milliseconds(*options.poll_interval_ms);
    for (auto c : conditions) {
      BackendConfig cfg = base;
      cfg.condition = c;
      cfg.validate();
      out.push_back(std::move(cfg));
    }
  }
  return out;
}

namespace {

void apply_speaker(EvaluationRecord& rec, const Manifest* manifest) {
  if (!manifest) return;
  const Recording* r = manifest->find_recording(rec.recording_id);
  if (r) {
    rec.speaker_id = r->speaker_id;
    rec.speech_type = std::string(to_string(r->speech_type));
  }
  if (const Speaker* s = manifest->find_speaker(rec.speaker_id)) {
    rec.l1 = s->l1;
    rec.gender = std::string(to_string(s->gender));
  }
}

EvaluationRecord record_from_result(const TranscriptionResult& result) {
  EvaluationRecord rec;
  rec.recording_id = result.recording_id;
  rec.backend_id = std::string(to_string(result.backend));
  rec.condition = std::string(to_string(result.condition));
  rec.processing_time_s = result.processing_time_s;
  rec.hypothesis_text = result.raw_text;
  rec.captured_at = result.captured_at;
  rec.retries = result.metadata.retries;
  return rec;
}

void sort_records(std::vector<EvaluationRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.recording_id, a.backend_id, a.condition) <
           std::tie(b.recording_id, b.backend_id, b.condition);
  });
}

std::string records_text(const std::vector<EvaluationRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) write_record(out, r);
  return out.str();
}

// Fills the scoring fields of rec from its reference and hypothesis text.
void score_record(EvaluationRecord& rec, const std::string& reference_text,
                  const std::vector<RevisionSpan>& revisions, const NormalizationConfig& norm) {
  const TokenSequence ref = normalize(reference_text, norm);
  const TokenSequence hyp = normalize(RawTranscript{rec.hypothesis_text.value_or(""),
                                                    TranscriptSource::kVendorOutput, rec.backend_id},
                                      norm);
  const Alignment alignment = align(ref, hyp);
  const ScoreReport s = score(alignment.counts);
  rec.counts = alignment.counts;
  rec.mer = s.mer;
  rec.wer = s.wer;
  rec.efficiency.reset();
  if (rec.processing_time_s) rec.efficiency = efficiency(s.mer, *rec.processing_time_s).value;
  rec.disfluency = analyze_disfluencies(ref, hyp, alignment, revisions, norm);
}

class Annotations {
 public:
  explicit Annotations(const fs::path& path) : path_(path) {
    if (path.empty()) return;
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      directory_ = true;
      return;
    }
    try {
      const json doc = json::parse(read_text_file(path));
      if (!doc.is_object()) fail(ErrorCode::kParse, "annotations: object keyed by recording id expected");
      for (auto it = doc.begin(); it != doc.end(); ++it)
        by_id_[it.key()] = parse_revision_annotations(it->dump());
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, "annotations " + path.string() + ": " + e.what());
    }
  }

  std::vector<RevisionSpan> get(const std::string& recording_id) const {
    if (directory_) {
      const fs::path file = path_ / (recording_id + ".json");
      std::error_code ec;
      if (!fs::exists(file, ec)) return {};
      return parse_revision_annotations(read_text_file(file));
    }
    auto it = by_id_.find(recording_id);
    return it == by_id_.end() ? std::vector<RevisionSpan>{} : it->second;
  }

 private:
  fs::path path_;
  bool directory_ = false;
  std::map<std::string, std::vector<RevisionSpan>> by_id_;
};

struct HypSource {
  std::string backend;
  std::string condition;
  fs::path dir;
};

HypSource parse_hyp_source(const std::string& spec) {
  HypSource src;
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    src.dir = spec;
    src.backend = fs::path(spec).lexically_normal().filename().string();
    if (src.backend.empty()) src.backend = fs::path(spec).lexically_normal().parent_path().filename().string();
  } else {
    std::string label = spec.substr(0, eq);
    src.dir = spec.substr(eq + 1);
    if (auto colon = label.find(':'); colon != std::string::npos) {
      src.condition = std::string(to_string(parse_condition(label.substr(colon + 1))));
      label.resize(colon);
    }
    src.backend = label;
  }
  if (src.backend.empty() || src.dir.empty())
    fail(ErrorCode::kConfig, "cannot derive a system name from --hyp-dir '" + spec + "'");
  return src;
}

std::vector<fs::path> text_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

struct Collected {
  std::vector<EvaluationRecord> records;
  std::size_t failures = 0;
};

Collected run_transcriptions(const PipelineOptions& options, TranscribeContext context,
                             const Manifest& manifest) {
  const std::vector<BackendConfig> configs = backend_configs(options);
  std::optional<ResponseCache> cache;
  if (!options.cache_dir.empty()) {
    cache.emplace(options.cache_dir);
    context.cache = &*cache;
  }
  check_credentials(configs, context);

  Collected out;
  run_batch(configs, manifest.recordings, context, [&](BatchItem item) {
    if (auto* f = std::get_if<TranscriptionFailure>(&item)) {
      ++out.failures;
      log::error("transcribe",
                 std::string(to_string(f->backend)) + "/" + std::string(to_string(f->condition)) + " " +
                     std::string(to_string(f->code)) + ": " + f->message,
                 f->recording_id);
      return;
    }
    EvaluationRecord rec = record_from_result(std::get<TranscriptionResult>(item));
    apply_speaker(rec, &manifest);
    out.records.push_back(std::move(rec));
  });
  sort_records(out.records);
  return out;
}

std::string reference_for(const EvaluationRecord& rec, const Manifest* manifest, const fs::path& ref_dir) {
  if (manifest) {
    if (const Recording* r = manifest->find_recording(rec.recording_id)) return read_text_file(r->reference_path);
  }
  if (!ref_dir.empty()) return read_text_file(ref_dir / (rec.recording_id + ".txt"));
  fail(ErrorCode::kIo, "no reference transcript for recording '" + rec.recording_id + "'");
}

ReportOptions report_options(const PipelineOptions& options, const std::vector<EvaluationRecord>& records) {
  ReportOptions ro;
  if (!options.groupings.empty()) {
    ro.groupings.clear();
    for (const auto& g : options.groupings) ro.groupings.push_back(parse_group_template(g));
  }
  if (!options.metrics.empty()) {
    ro.metrics.clear();
    for (const auto& m : options.metrics) ro.metrics.push_back(parse_metric(m));
  }
  ro.generated_at = resolve_generated_at(records, options.timestamp);
  const auto& n = options.normalization;
  json digits = nullptr;
  if (n.digit_word_map) digits = *n.digit_word_map;
  ro.config = {{"strip_vendor_tags", n.strip_vendor_tags},
               {"strip_leading_speaker_stamp", n.strip_leading_speaker_stamp},
               {"speaker_stamp_pattern", n.speaker_stamp_pattern},
               {"digit_word_map", digits},
               {"filler_tokens", n.filler_tokens}};
  return ro;
}

void write_report(const PipelineOptions& options, const std::vector<EvaluationRecord>& records) {
  const ReportDocument doc = build_report(records, report_options(options, records));
  ExportFormat format = ExportFormat::kJson;
  if (options.format) format = *options.format;
  else if (options.out.extension() == ".csv") format = ExportFormat::kCsv;
  write_file_atomic(options.out, export_report(doc, format));
}

}  // namespace

RunSummary cmd_transcribe(const PipelineOptions& options, TranscribeContext context) {
  require(!options.manifest.empty(), "transcribe needs --manifest");
  require(!options.out.empty(), "transcribe needs --out");
  options.normalization.validate();
  const Manifest manifest = load_manifest(options.manifest);
  Collected got = run_transcriptions(options, std::move(context), manifest);

  // Score where the reference is available; transcription output stays usable without it.
  for (auto& rec : got.records) {
    const Recording* r = manifest.find_recording(rec.recording_id);
    std::error_code ec;
    if (!r || !fs::exists(r->reference_path, ec)) continue;
    try {
      score_record(rec, read_text_file(r->reference_path), {}, options.normalization);
    } catch (const Error& e) {
      log::warn("transcribe", std::string("not scored: ") + e.what(), rec.recording_id);
    }
  }
  write_file_atomic(options.out, records_text(got.records));
  return {got.records.size(), got.failures};
}

RunSummary cmd_evaluate(const PipelineOptions& options) {
  require(!options.out.empty(), "evaluate needs --out");
  options.normalization.validate();
  const bool from_records = !options.records.empty();
  const bool from_dirs = !options.hyp_dirs.empty();
  const bool from_cache = !options.backends.empty();
  require(int(from_records) + int(from_dirs) + int(from_cache) == 1,
          "evaluate needs exactly one input: --records, --hyp-dir, or --backend with a cache");

  std::optional<Manifest> manifest;
  if (!options.manifest.empty()) manifest = load_manifest(options.manifest);
  const Manifest* m = manifest ? &*manifest : nullptr;

  std::vector<EvaluationRecord> pending;
  std::size_t failures = 0;
  if (from_records) {
    pending = load_records(options.records);
  } else if (from_dirs) {
    require(!options.ref_dir.empty(), "--hyp-dir needs --ref-dir");
    for (const auto& spec : options.hyp_dirs) {
      const HypSource src = parse_hyp_source(spec);
      for (const auto& file : text_files(src.dir)) {
        EvaluationRecord rec;
        rec.recording_id = file.stem().string();
        rec.backend_id = src.backend;
        rec.condition = src.condition;
        rec.hypothesis_text = read_text_file(file);
        pending.push_back(std::move(rec));
      }
    }
  } else {
    require(m != nullptr, "evaluating from a cache needs --manifest");
    Collected got = run_transcriptions(options, {}, *m);
    pending = std::move(got.records);
    failures += got.failures;
  }

  const Annotations annotations(options.annotations);
  std::vector<EvaluationRecord> scored;
  for (auto& rec : pending) {
    try {
      if (!rec.hypothesis_text) fail(ErrorCode::kParse, "record has no hypothesis_text");
      apply_speaker(rec, m);
      score_record(rec, reference_for(rec, m, options.ref_dir), annotations.get(rec.recording_id),
                   options.normalization);
      scored.push_back(std::move(rec));
    } catch (const Error& e) {
      ++failures;
      log::error("evaluate", std::string(to_string(e.code())) + ": " + e.what(), rec.recording_id);
    }
  }
  sort_records(scored);
  if (scored.empty()) fail(ErrorCode::kInvalidArgument, "no records could be scored");

  if (!options.scored_out.empty()) write_file_atomic(options.scored_out, records_text(scored));
  write_report(options, scored);
  return {scored.size(), failures};
}

RunSummary cmd_report(const PipelineOptions& options) {
  require(!options.records.empty(), "report needs --records");
  require(!options.out.empty(), "report needs --out");
  std::vector<EvaluationRecord> records = load_records(options.records);
  sort_records(records);
  write_report(options, records);
  return {records.size(), 0};
}

}  // namespace asrbench
