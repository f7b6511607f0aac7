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

// End-to-end workflow commands: corpus preparation, transcription, scoring
// and reporting. These back both the CLI and the C API.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asrbench/backends.hpp"
#include "asrbench/report.hpp"
#include "asrbench/textnorm.hpp"

namespace asrbench {

struct PipelineOptions {
  // filter-corpus
  std::filesystem::path prompts;
  std::filesystem::path wordlist;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;

  // transcribe
  std::filesystem::path manifest;
  std::vector<std::string> backends;  // "deepgram", "replay:deepgram", ...
  std::vector<DisfluencyCondition> conditions;
  bool replay = false;
  std::filesystem::path cache_dir;
  unsigned max_concurrency = 4;
  std::optional<std::string> initial_prompt;
  std::optional<double> min_audio_seconds;
  std::optional<double> timeout_s;
  std::optional<std::string> base_url;
  std::optional<unsigned> poll_interval_ms;

  // evaluate / report
  std::filesystem::path records;
  std::filesystem::path ref_dir;
  /// "<dir>" (label = directory name) or "<backend>[:<condition>]=<dir>".
  std::vector<std::string> hyp_dirs;
  std::filesystem::path annotations;
  std::filesystem::path scored_out;
  std::vector<std::string> groupings;
  std::vector<std::string> metrics;
  std::optional<ExportFormat> format;
  std::optional<std::string> timestamp;

  std::filesystem::path out;
  NormalizationConfig normalization;
  bool custom_fillers = false;  // first "filler" setting replaces the defaults

  /// Applies one "key=value" style setting; repeatable keys append.
  /// Unknown keys and malformed values throw kInvalidArgument.
  void set(std::string_view key, std::string_view value);
};

struct RunSummary {
  std::size_t produced = 0;
  std::size_t failures = 0;
};

/// Filters prompts by the wordlist and samples k of them into `out`, one
/// per line. Nothing is written when sampling fails.
RunSummary cmd_filter_corpus(const PipelineOptions& options);

/// Builds backend configs from the options (validated up front).
std::vector<BackendConfig> backend_configs(const PipelineOptions& options);

/// Transcribes every manifest recording with every backend and condition and
/// appends one EvaluationRecord per success to `out` (JSON lines). Metrics
/// are filled when the reference transcript is readable.
RunSummary cmd_transcribe(const PipelineOptions& options,
                          TranscribeContext context = {});

/// Scores records (from transcribe, with --manifest) or ref/hyp directory
/// pairs, runs disfluency analysis against annotations and writes the report
/// to `out`. Scored records go to `scored_out` when set.
RunSummary cmd_evaluate(const PipelineOptions& options);

/// Rebuilds a report from scored records.
RunSummary cmd_report(const PipelineOptions& options);

}  // namespace asrbench
