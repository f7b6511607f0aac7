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

#include "asrbench/backends.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "asrbench/log.hpp"

namespace asrbench {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string_view to_string(BackendId id) noexcept {
  switch (id) {
    case BackendId::kAssemblyAI: return "assemblyai";
    case BackendId::kDeepgram: return "deepgram";
    case BackendId::kRevAI: return "revai";
    case BackendId::kSpeechmatics: return "speechmatics";
    case BackendId::kWhisperReplicate: return "whisper_replicate";
    case BackendId::kReplay: return "replay";
  }
  return "unknown";
}

std::string_view to_string(DisfluencyCondition c) noexcept {
  return c == DisfluencyCondition::kOmitted ? "omitted" : "retained";
}

BackendId parse_backend_id(std::string_view s) {
  for (auto id : {BackendId::kAssemblyAI, BackendId::kDeepgram, BackendId::kRevAI,
                  BackendId::kSpeechmatics, BackendId::kWhisperReplicate, BackendId::kReplay})
    if (s == to_string(id)) return id;
  if (s == "whisper") return BackendId::kWhisperReplicate;
  fail(ErrorCode::kInvalidArgument, "unknown backend '" + std::string(s) + "'");
}

DisfluencyCondition parse_condition(std::string_view s) {
  if (s == "omitted") return DisfluencyCondition::kOmitted;
  if (s == "retained") return DisfluencyCondition::kRetained;
  fail(ErrorCode::kInvalidArgument,
       "condition must be 'omitted' or 'retained', got '" + std::string(s) + "'");
}

std::string_view default_credentials_env(BackendId id) noexcept {
  switch (id) {
    case BackendId::kAssemblyAI: return "ASRBENCH_ASSEMBLYAI_KEY";
    case BackendId::kDeepgram: return "ASRBENCH_DEEPGRAM_KEY";
    case BackendId::kRevAI: return "ASRBENCH_REVAI_KEY";
    case BackendId::kSpeechmatics: return "ASRBENCH_SPEECHMATICS_KEY";
    case BackendId::kWhisperReplicate: return "ASRBENCH_REPLICATE_KEY";
    case BackendId::kReplay: return "";
  }
  return "";
}

std::string BackendConfig::credentials_variable() const {
  return credentials_env.empty() ? std::string(default_credentials_env(backend)) : credentials_env;
}

std::optional<double> BackendConfig::effective_min_audio_seconds() const {
  if (min_audio_seconds) return min_audio_seconds;
  if (vendor() == BackendId::kRevAI) return 2.0;
  return std::nullopt;
}

void BackendConfig::validate() const {
  if (replay_source == BackendId::kReplay)
    fail(ErrorCode::kConfig, "replay source must be a vendor backend");
  if (initial_prompt && vendor() != BackendId::kWhisperReplicate)
    fail(ErrorCode::kConfig, "initial_prompt is only supported by whisper_replicate");
  if (min_audio_seconds && !(*min_audio_seconds >= 0.0 && std::isfinite(*min_audio_seconds)))
    fail(ErrorCode::kConfig, "min_audio_seconds must be a non-negative number");
  if (!(timeout.count() > 0.0)) fail(ErrorCode::kConfig, "timeout must be positive");
  if (max_concurrency == 0) fail(ErrorCode::kConfig, "max_concurrency must be at least 1");
  if (poll_interval.count() < 0) fail(ErrorCode::kConfig, "poll interval must be non-negative");
}

json request_flags(const BackendConfig& config) {
  const bool retain = config.condition == DisfluencyCondition::kRetained;
  switch (config.vendor()) {
    case BackendId::kAssemblyAI: return {{"disfluencies", retain}};
    case BackendId::kDeepgram: return {{"filler_words", retain}};
    case BackendId::kRevAI:
    case BackendId::kSpeechmatics: return {{"remove_disfluencies", !retain}};
    case BackendId::kWhisperReplicate:
      if (retain && config.initial_prompt) return {{"initial_prompt", *config.initial_prompt}};
      return json::object();
    case BackendId::kReplay: break;
  }
  return json::object();
}

// ---------------------------------------------------------------------------
// Cache

fs::path ResponseCache::entry_path(BackendId vendor, DisfluencyCondition condition,
                                   std::string_view audio_sha256) const {
  return root_ / std::string(to_string(vendor)) / std::string(to_string(condition)) /
         (std::string(audio_sha256) + ".json");
}

std::optional<CacheEntry> ResponseCache::get(BackendId vendor, DisfluencyCondition condition,
                                             std::string_view audio_sha256) const {
  const fs::path path = entry_path(vendor, condition, audio_sha256);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, "cache entry " + path.string() + ": " + e.what());
  }
  CacheEntry entry;
  if (!doc.is_object() || !doc.contains("raw_text") || !doc["raw_text"].is_string() ||
      !doc.contains("processing_time_s") || !doc["processing_time_s"].is_number())
    fail(ErrorCode::kParse, "cache entry " + path.string() + ": raw_text and processing_time_s required");
  entry.raw_text = doc["raw_text"].get<std::string>();
  entry.processing_time_s = doc["processing_time_s"].get<double>();
  if (!(entry.processing_time_s > 0.0))
    fail(ErrorCode::kParse, "cache entry " + path.string() + ": processing_time_s must be positive");
  entry.captured_at = doc.value("captured_at", "");
  entry.request_flags = doc.value("request_flags", json::object());
  return entry;
}

void ResponseCache::put(BackendId vendor, DisfluencyCondition condition,
                        std::string_view audio_sha256, const CacheEntry& entry) {
  const json doc = {{"raw_text", entry.raw_text},
                    {"processing_time_s", entry.processing_time_s},
                    {"captured_at", entry.captured_at},
                    {"request_flags", entry.request_flags}};
  std::lock_guard lock(write_mutex_);
  write_file_atomic(entry_path(vendor, condition, audio_sha256), doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Vendor adapters

namespace {

struct VendorOutcome {
  std::string text;
  double seconds = 0.0;
  int status = 0;
};

class VendorSession {
 public:
  VendorSession(HttpTransport& http, const BackendConfig& config, std::string api_key)
      : http_(http), config_(config), api_key_(std::move(api_key)) {}

  HttpResponse send(HttpRequest req) {
    if (!started_) {
      started_ = Clock::now();
      deadline_ = *started_ + std::chrono::duration_cast<Clock::duration>(config_.timeout);
    }
    const auto remaining = std::chrono::duration<double>(deadline_ - Clock::now());
    if (remaining.count() <= 0.0) fail(ErrorCode::kTimeout, "timed out waiting for " + req.url);
    HttpResponse res = http_.send(req, remaining);
    status_ = res.status;
    if (res.status == 401 || res.status == 403)
      fail(ErrorCode::kAuth, req.method + " " + req.url + ": HTTP " + std::to_string(res.status));
    if (res.status == 408 || res.status == 504)
      fail(ErrorCode::kTimeout, req.method + " " + req.url + ": HTTP " + std::to_string(res.status));
    if (res.status < 200 || res.status >= 300)
      fail(ErrorCode::kVendorRejected, req.method + " " + req.url + ": HTTP " +
                                           std::to_string(res.status) + " " + res.body.substr(0, 300));
    return res;
  }

  json send_json(HttpRequest req) {
    HttpResponse res = send(std::move(req));
    try {
      return json::parse(res.body);
    } catch (const json::exception& e) {
      fail(ErrorCode::kVendorRejected, std::string("unparseable vendor response: ") + e.what());
    }
  }

  void wait_before_poll() {
    if (Clock::now() + config_.poll_interval >= deadline_)
      fail(ErrorCode::kTimeout, "transcription did not finish within the timeout");
    std::this_thread::sleep_for(config_.poll_interval);
  }

  VendorOutcome finish(std::string text) const {
    VendorOutcome out;
    out.text = std::move(text);
    out.seconds = std::chrono::duration<double>(Clock::now() - started_.value_or(Clock::now())).count();
    out.status = status_;
    return out;
  }

  const BackendConfig& config() const { return config_; }
  const std::string& key() const { return api_key_; }

 private:
  HttpTransport& http_;
  const BackendConfig& config_;
  std::string api_key_;
  std::optional<Clock::time_point> started_;
  Clock::time_point deadline_{};
  int status_ = 0;
};

std::string api_root(const BackendConfig& config, std::string_view fallback) {
  std::string root = config.base_url.value_or(std::string(fallback));
  while (!root.empty() && root.back() == '/') root.pop_back();
  return root;
}

std::string_view as_text(std::span<const std::uint8_t> b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

struct MultipartPart {
  std::string name;
  std::string filename;  // empty for plain fields
  std::string content_type;
  std::string_view data;
};

// Deterministic boundary so identical inputs produce identical request bodies.
HttpRequest multipart_post(std::string url, const std::vector<MultipartPart>& parts,
                           std::string_view boundary_seed) {
  const std::string boundary = "asrbench-" + sha256_hex(boundary_seed).substr(0, 24);
  std::string body;
  for (const auto& p : parts) {
    body += "--" + boundary + "\r\n";
    body += "Content-Disposition: form-data; name=\"" + p.name + "\"";
    if (!p.filename.empty()) body += "; filename=\"" + p.filename + "\"";
    body += "\r\n";
    if (!p.content_type.empty()) body += "Content-Type: " + p.content_type + "\r\n";
    body += "\r\n";
    body += p.data;
    body += "\r\n";
  }
  body += "--" + boundary + "--\r\n";
  HttpRequest req;
  req.method = "POST";
  req.url = std::move(url);
  req.body = std::move(body);
  req.content_type = "multipart/form-data; boundary=" + boundary;
  return req;
}

std::string string_field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    fail(ErrorCode::kVendorRejected, std::string(what) + ": response lacks '" + key + "'");
  return it->get<std::string>();
}

VendorOutcome run_assemblyai(VendorSession& s, std::span<const std::uint8_t> audio) {
  const std::string root = api_root(s.config(), "https://api.assemblyai.com");
  HttpRequest upload{"POST", root + "/v2/upload", {{"authorization", s.key()}},
                     std::string(as_text(audio)), "application/octet-stream"};
  const std::string audio_url = string_field(s.send_json(std::move(upload)), "upload_url", "assemblyai upload");

  json body = {{"audio_url", audio_url}, {"speech_model", "best"}};
  body.update(request_flags(s.config()));
  HttpRequest submit{"POST", root + "/v2/transcript", {{"authorization", s.key()}}, body.dump(),
                     "application/json"};
  const std::string id = string_field(s.send_json(std::move(submit)), "id", "assemblyai submit");

  for (;;) {
    HttpRequest poll{"GET", root + "/v2/transcript/" + id, {{"authorization", s.key()}}, "", ""};
    const json j = s.send_json(std::move(poll));
    const std::string status = j.value("status", "");
    if (status == "completed") return s.finish(j.value("text", ""));
    if (status == "error")
      fail(ErrorCode::kVendorRejected, "assemblyai: " + j.value("error", std::string("error")));
    s.wait_before_poll();
  }
}

VendorOutcome run_deepgram(VendorSession& s, std::span<const std::uint8_t> audio) {
  const std::string root = api_root(s.config(), "https://api.deepgram.com");
  const bool filler_words = request_flags(s.config())["filler_words"].get<bool>();
  HttpRequest req{"POST",
                  root + "/v1/listen?model=nova-2&filler_words=" + (filler_words ? "true" : "false"),
                  {{"Authorization", "Token " + s.key()}},
                  std::string(as_text(audio)),
                  "audio/wav"};
  const json j = s.send_json(std::move(req));
  try {
    return s.finish(j.at("results").at("channels").at(0).at("alternatives").at(0).at("transcript")
                        .get<std::string>());
  } catch (const json::exception&) {
    fail(ErrorCode::kVendorRejected, "deepgram: response lacks a transcript");
  }
}

VendorOutcome run_revai(VendorSession& s, std::span<const std::uint8_t> audio,
                        std::string_view audio_hash) {
  const std::string root = api_root(s.config(), "https://api.rev.ai");
  const std::string auth = "Bearer " + s.key();
  const std::string options = request_flags(s.config()).dump();
  HttpRequest submit = multipart_post(root + "/speechtotext/v1/jobs",
                                      {{"media", "audio.wav", "audio/wav", as_text(audio)},
                                       {"options", "", "application/json", options}},
                                      audio_hash);
  submit.headers.emplace("Authorization", auth);
  const std::string id = string_field(s.send_json(std::move(submit)), "id", "revai submit");

  for (;;) {
    const json j = s.send_json({"GET", root + "/speechtotext/v1/jobs/" + id, {{"Authorization", auth}}, "", ""});
    const std::string status = j.value("status", "");
    if (status == "transcribed") break;
    if (status == "failed")
      fail(ErrorCode::kVendorRejected, "revai: " + j.value("failure_detail", std::string("job failed")));
    s.wait_before_poll();
  }
  HttpResponse text = s.send({"GET", root + "/speechtotext/v1/jobs/" + id + "/transcript",
                              {{"Authorization", auth}, {"Accept", "text/plain"}}, "", ""});
  return s.finish(std::move(text.body));
}

VendorOutcome run_speechmatics(VendorSession& s, std::span<const std::uint8_t> audio,
                               std::string_view audio_hash) {
  const std::string root = api_root(s.config(), "https://asr.api.speechmatics.com");
  const std::string auth = "Bearer " + s.key();
  const json config = {
      {"type", "transcription"},
      {"transcription_config",
       {{"language", "en"},
        {"operating_point", "enhanced"},
        {"transcript_filtering_config", request_flags(s.config())}}}};
  const std::string config_text = config.dump();
  HttpRequest submit = multipart_post(root + "/v2/jobs",
                                      {{"config", "", "", config_text},
                                       {"data_file", "audio.wav", "audio/wav", as_text(audio)}},
                                      audio_hash);
  submit.headers.emplace("Authorization", auth);
  const std::string id = string_field(s.send_json(std::move(submit)), "id", "speechmatics submit");

  for (;;) {
    const json j = s.send_json({"GET", root + "/v2/jobs/" + id, {{"Authorization", auth}}, "", ""});
    const std::string status = j.contains("job") ? j["job"].value("status", "") : "";
    if (status == "done") break;
    if (status == "rejected" || status == "deleted" || status == "expired")
      fail(ErrorCode::kVendorRejected, "speechmatics: job " + status);
    s.wait_before_poll();
  }
  HttpResponse text = s.send({"GET", root + "/v2/jobs/" + id + "/transcript?format=txt",
                              {{"Authorization", auth}}, "", ""});
  return s.finish(std::move(text.body));
}

VendorOutcome run_whisper(VendorSession& s, std::span<const std::uint8_t> audio) {
  const std::string root = api_root(s.config(), "https://api.replicate.com");
  const std::string auth = "Bearer " + s.key();
  json input = {{"audio", "data:audio/wav;base64," + base64_encode(audio)}, {"model", "large-v3"}};
  input.update(request_flags(s.config()));
  const json body = {{"input", input}};
  const json created = s.send_json({"POST", root + "/v1/models/openai/whisper/predictions",
                                    {{"Authorization", auth}}, body.dump(), "application/json"});
  const std::string id = string_field(created, "id", "replicate submit");

  json j = created;
  for (;;) {
    const std::string status = j.value("status", "");
    if (status == "succeeded") {
      const json& out = j["output"];
      if (out.is_object() && out.contains("transcription") && out["transcription"].is_string())
        return s.finish(out["transcription"].get<std::string>());
      fail(ErrorCode::kVendorRejected, "replicate: output lacks a transcription");
    }
    if (status == "failed" || status == "canceled")
      fail(ErrorCode::kVendorRejected, "replicate: prediction " + status);
    s.wait_before_poll();
    j = s.send_json({"GET", root + "/v1/predictions/" + id, {{"Authorization", auth}}, "", ""});
  }
}

VendorOutcome run_vendor(HttpTransport& http, const BackendConfig& config, const std::string& key,
                         std::span<const std::uint8_t> audio, std::string_view audio_hash) {
  VendorSession session(http, config, key);
  switch (config.vendor()) {
    case BackendId::kAssemblyAI: return run_assemblyai(session, audio);
    case BackendId::kDeepgram: return run_deepgram(session, audio);
    case BackendId::kRevAI: return run_revai(session, audio, audio_hash);
    case BackendId::kSpeechmatics: return run_speechmatics(session, audio, audio_hash);
    case BackendId::kWhisperReplicate: return run_whisper(session, audio);
    case BackendId::kReplay: break;
  }
  fail(ErrorCode::kInternal, "no vendor adapter");
}

std::optional<std::string> lookup_env(const TranscribeContext& ctx, const std::string& name) {
  if (ctx.getenv) return ctx.getenv(name);
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

std::string require_key(const BackendConfig& config, const TranscribeContext& ctx) {
  const std::string var = config.credentials_variable();
  auto key = lookup_env(ctx, var);
  if (!key || key->empty())
    fail(ErrorCode::kConfig, "missing credentials: set " + var + " for " +
                                 std::string(to_string(config.backend)));
  return *key;
}

}  // namespace

void check_credentials(const std::vector<BackendConfig>& configs, const TranscribeContext& context) {
  for (const auto& c : configs) {
    c.validate();
    if (c.is_replay()) {
      if (!context.cache) fail(ErrorCode::kConfig, "the replay backend needs a cache directory");
      continue;
    }
    require_key(c, context);
  }
}

TranscriptionResult transcribe(const BackendConfig& config, const fs::path& audio_path,
                               const TranscribeContext& context, std::string recording_id) {
  config.validate();
  if (recording_id.empty()) recording_id = audio_path.stem().string();
  const Bytes audio = read_file(audio_path);
  parse_wav(audio);

  TranscriptionResult result;
  result.recording_id = recording_id;
  result.backend = config.vendor();
  result.condition = config.condition;
  result.metadata.audio_sha256 = sha256_hex(audio);
  const std::string& hash = result.metadata.audio_sha256;

  if (context.cache) {
    if (auto hit = context.cache->get(config.vendor(), config.condition, hash)) {
      result.raw_text = std::move(hit->raw_text);
      result.processing_time_s = hit->processing_time_s;
      result.captured_at = std::move(hit->captured_at);
      result.metadata.request_flags = std::move(hit->request_flags);
      result.metadata.from_cache = true;
      result.metadata.http_status = 200;
      return result;
    }
  }
  if (config.is_replay())
    fail(context.cache ? ErrorCode::kCacheMiss : ErrorCode::kConfig,
         context.cache ? "no cached " + std::string(to_string(config.vendor())) + "/" +
                             std::string(to_string(config.condition)) + " response for " +
                             audio_path.string()
                       : "the replay backend needs a cache directory");

  const std::string key = require_key(config, context);
  Bytes upload = audio;
  if (auto min = config.effective_min_audio_seconds()) {
    if (parse_wav(audio).duration_s() < *min) {
      upload = pad_audio(audio, *min);
      result.metadata.padded = true;
    }
  }

  std::shared_ptr<HttpTransport> transport =
      context.transport ? context.transport : make_default_transport();
  VendorOutcome outcome;
  for (unsigned attempt = 0;; ++attempt) {
    try {
      outcome = run_vendor(*transport, config, key, upload, hash);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransport || attempt >= 1) throw;
      log::warn("backends", std::string("retrying after transport error: ") + e.what(), recording_id);
      result.metadata.retries = attempt + 1;
    }
  }
  result.raw_text = std::move(outcome.text);
  // Clock granularity can make a mocked exchange read as zero seconds.
  result.processing_time_s = std::max(outcome.seconds, 1e-9);
  result.metadata.http_status = outcome.status;
  result.metadata.request_flags = request_flags(config);
  result.captured_at = utc_timestamp_now();

  if (context.cache) {
    context.cache->put(config.vendor(), config.condition, hash,
                       {result.raw_text, result.processing_time_s, result.captured_at,
                        result.metadata.request_flags});
  }
  return result;
}

void run_batch(const std::vector<BackendConfig>& configs, const std::vector<Recording>& recordings,
               const TranscribeContext& context, const std::function<void(BatchItem)>& sink) {
  if (recordings.empty() || configs.empty()) return;
  std::mutex sink_mutex;
  auto deliver = [&](BatchItem item) {
    std::lock_guard lock(sink_mutex);
    sink(std::move(item));
  };

  // One shared context: the default transport is stateless per request.
  TranscribeContext shared = context;
  if (!shared.transport) shared.transport = make_default_transport();

  std::vector<std::unique_ptr<std::atomic<std::size_t>>> cursors;
  std::vector<std::jthread> workers;
  for (const auto& config : configs) {
    cursors.push_back(std::make_unique<std::atomic<std::size_t>>(0));
    auto* cursor = cursors.back().get();
    const unsigned n = std::max(1u, std::min<unsigned>(config.max_concurrency,
                                                       static_cast<unsigned>(recordings.size())));
    for (unsigned w = 0; w < n; ++w) {
      workers.emplace_back([&, cursor, &config = config] {
        for (;;) {
          const std::size_t idx = cursor->fetch_add(1);
          if (idx >= recordings.size()) return;
          const Recording& rec = recordings[idx];
          try {
            deliver(transcribe(config, rec.audio_path, shared, rec.id));
          } catch (const Error& e) {
            deliver(TranscriptionFailure{rec.id, config.vendor(), config.condition, e.code(), e.what()});
          } catch (const std::exception& e) {
            deliver(TranscriptionFailure{rec.id, config.vendor(), config.condition,
                                         ErrorCode::kInternal, e.what()});
          }
        }
      });
    }
  }
}

std::vector<BatchItem> run_batch(const std::vector<BackendConfig>& configs,
                                 const std::vector<Recording>& recordings,
                                 const TranscribeContext& context) {
  std::vector<BatchItem> out;
  run_batch(configs, recordings, context, [&](BatchItem item) { out.push_back(std::move(item)); });
  return out;
}

}  // namespace asrbench
