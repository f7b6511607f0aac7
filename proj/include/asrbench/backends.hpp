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

// Transcription backends.
//
// Each vendor adapter turns (config, audio) into one or more HTTP exchanges
// and returns the vendor's text verbatim. Timing starts when the first
// request of a transcription is dispatched and stops when the final response
// arrives, so uploads and polling are included and queueing is not.
//
// Responses are cached under
//   <cache>/<vendor>/<condition>/<sha256-of-audio>.json
// and the replay backend serves transcriptions from that cache only.

#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "asrbench/corpus.hpp"
#include "asrbench/error.hpp"
#include "asrbench/util.hpp"
#include "asrbench/wav.hpp"

namespace asrbench {

enum class BackendId {
  kAssemblyAI,
  kDeepgram,
  kRevAI,
  kSpeechmatics,
  kWhisperReplicate,
  kReplay,
};

enum class DisfluencyCondition { kOmitted, kRetained };

std::string_view to_string(BackendId id) noexcept;
std::string_view to_string(DisfluencyCondition c) noexcept;
BackendId parse_backend_id(std::string_view s);
DisfluencyCondition parse_condition(std::string_view s);

/// Environment variable holding the vendor's API key.
std::string_view default_credentials_env(BackendId id) noexcept;

struct BackendConfig {
  BackendId backend = BackendId::kReplay;
  /// Vendor whose cached responses a replay config serves.
  BackendId replay_source = BackendId::kAssemblyAI;
  std::string credentials_env;  // empty: default_credentials_env(backend)
  DisfluencyCondition condition = DisfluencyCondition::kRetained;
  std::optional<std::string> initial_prompt;  // whisper_replicate only
  std::optional<double> min_audio_seconds;    // revai defaults to 2.0
  std::chrono::duration<double> timeout{300.0};
  unsigned max_concurrency = 4;
  /// Overrides the vendor API root (tests, proxies).
  std::optional<std::string> base_url;
  std::chrono::milliseconds poll_interval{1000};

  /// The vendor this config's transcripts belong to.
  BackendId vendor() const noexcept {
    return backend == BackendId::kReplay ? replay_source : backend;
  }
  bool is_replay() const noexcept { return backend == BackendId::kReplay; }
  std::string credentials_variable() const;
  std::optional<double> effective_min_audio_seconds() const;

  void validate() const;
};

/// The disfluency flags a request carries for this config, e.g.
/// {"disfluencies": true} for AssemblyAI in the retained condition. Whisper
/// reports {"initial_prompt": "..."} only when a prompt is attached.
nlohmann::json request_flags(const BackendConfig& config);

struct RequestMetadata {
  int http_status = 0;
  unsigned retries = 0;
  bool from_cache = false;
  bool padded = false;
  std::string audio_sha256;
  nlohmann::json request_flags = nlohmann::json::object();
};

struct TranscriptionResult {
  std::string recording_id;
  std::string raw_text;
  double processing_time_s = 0.0;
  BackendId backend = BackendId::kReplay;  // vendor id
  DisfluencyCondition condition = DisfluencyCondition::kRetained;
  std::string captured_at;  // ISO-8601 UTC
  RequestMetadata metadata;
};

struct TranscriptionFailure {
  std::string recording_id;
  BackendId backend = BackendId::kReplay;
  DisfluencyCondition condition = DisfluencyCondition::kRetained;
  ErrorCode code = ErrorCode::kInternal;
  std::string message;
};

using BatchItem = std::variant<TranscriptionResult, TranscriptionFailure>;

// ---------------------------------------------------------------------------
// HTTP

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // absolute
  std::multimap<std::string, std::string> headers;
  std::string body;
  std::string content_type;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Sends one request. Transport-level problems throw Error(kTransport) or
/// Error(kTimeout); HTTP error statuses are returned, not thrown.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse send(const HttpRequest& request,
                            std::chrono::duration<double> timeout) = 0;
};

std::shared_ptr<HttpTransport> make_default_transport();

// ---------------------------------------------------------------------------
// Cache

struct CacheEntry {
  std::string raw_text;
  double processing_time_s = 0.0;
  std::string captured_at;
  nlohmann::json request_flags = nlohmann::json::object();
};

/// Concurrent reads, serialized writes (temp file + rename).
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path entry_path(BackendId vendor, DisfluencyCondition condition,
                                   std::string_view audio_sha256) const;
  std::optional<CacheEntry> get(BackendId vendor, DisfluencyCondition condition,
                                std::string_view audio_sha256) const;
  void put(BackendId vendor, DisfluencyCondition condition,
           std::string_view audio_sha256, const CacheEntry& entry);

  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path root_;
  std::mutex write_mutex_;
};

// ---------------------------------------------------------------------------
// Transcription

struct TranscribeContext {
  std::shared_ptr<HttpTransport> transport;  // default transport when null
  ResponseCache* cache = nullptr;            // required for replay
  /// Reads an environment variable; std::getenv when unset.
  std::function<std::optional<std::string>(const std::string&)> getenv;
};

/// Runs one transcription. Throws Error with kAuth, kTimeout, kTransport,
/// kVendorRejected, kConfig, kCacheMiss, kFormat or kIo.
TranscriptionResult transcribe(const BackendConfig& config,
                               const std::filesystem::path& audio_path,
                               const TranscribeContext& context,
                               std::string recording_id = {});

/// Checks credentials for every live config before any work starts.
void check_credentials(const std::vector<BackendConfig>& configs,
                       const TranscribeContext& context);

/// Transcribes every (config, recording) pair. Each pair produces exactly
/// one BatchItem delivered to `sink`; calls to `sink` are serialized. At
/// most config.max_concurrency requests per config are in flight.
void run_batch(const std::vector<BackendConfig>& configs,
               const std::vector<Recording>& recordings,
               const TranscribeContext& context,
               const std::function<void(BatchItem)>& sink);

std::vector<BatchItem> run_batch(const std::vector<BackendConfig>& configs,
                                 const std::vector<Recording>& recordings,
                                 const TranscribeContext& context);

}  // namespace asrbench
