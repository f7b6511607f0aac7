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

// asrbench command-line front end. All work goes through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asrbench/asrbench.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitError = 2;

struct Bound {
  std::string key;
  std::vector<std::string> values;
};

struct BoolFlag {
  std::string key;
  bool value = false;
  bool inverted = false;  // --no-x sets key=false
};

// Collects option values per subcommand and replays them into asrb_options.
class Command {
 public:
  explicit Command(CLI::App* app) : app_(app) {}

  Command& value(const std::string& flag, const std::string& key, const std::string& help) {
    auto& b = values_.emplace_back(std::make_unique<Bound>(Bound{key, {}}));
    app_->add_option(flag, b->values, help)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return *this;
  }

  Command& repeated(const std::string& flag, const std::string& key, const std::string& help) {
    auto& b = values_.emplace_back(std::make_unique<Bound>(Bound{key, {}}));
    app_->add_option(flag, b->values, help)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    return *this;
  }

  Command& flag(const std::string& flag, const std::string& key, const std::string& help, bool inverted = false) {
    auto& f = flags_.emplace_back(std::make_unique<BoolFlag>(BoolFlag{key, false, inverted}));
    app_->add_flag(flag, f->value, help);
    return *this;
  }

  Command& normalization() {
    flag("--keep-digits", "keep-digits", "Score digits as written (default)");
    value("--digit-map", "digit-map", "File of '<digits> <words>' replacements applied before scoring");
    flag("--no-strip-tags", "strip-tags", "Keep <...> vendor tags", true);
    flag("--no-strip-speaker-stamp", "strip-speaker-stamp", "Keep a leading speaker/timestamp prefix", true);
    value("--speaker-stamp-pattern", "speaker-stamp-pattern", "Regex for the leading speaker stamp");
    repeated("--filler", "filler", "Filler token (repeatable; replaces the um/uh default)");
    return *this;
  }

  CLI::App* app() const { return app_; }

  bool apply(asrb_options* options) const {
    for (const auto& b : values_)
      for (const auto& v : b->values)
        if (!set(options, b->key, v)) return false;
    for (const auto& f : flags_)
      if (f->value && !set(options, f->key, f->inverted ? "false" : "true")) return false;
    return true;
  }

 private:
  static bool set(asrb_options* options, const std::string& key, const std::string& value) {
    if (asrb_options_set(options, key.c_str(), value.c_str()) == ASRB_OK) return true;
    std::fprintf(stderr, "asrbench: %s\n", asrb_last_error());
    return false;
  }

  CLI::App* app_;
  std::vector<std::unique_ptr<Bound>> values_;
  std::vector<std::unique_ptr<BoolFlag>> flags_;
};

int log_level_from(const std::string& name) {
  static const std::map<std::string, int> levels{{"debug", 0}, {"info", 1}, {"warn", 2}, {"error", 3}, {"off", 4}};
  return levels.at(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate ASR systems on disfluent and accented speech"};
  app.set_version_flag("--version", std::string(asrb_version()));
  app.set_config("--config", "", "TOML config file; explicit flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "Log verbosity on standard error")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));

  Command filter(app.add_subcommand("filter-corpus", "Keep prompts covered by a wordlist and sample k of them"));
  filter.value("--prompts", "prompts", "Prompt file, one sentence per line")
      .value("--wordlist", "wordlist", "Wordlist, one word per line")
      .value("--k", "k", "Number of sentences to sample")
      .value("--seed", "seed", "Sampling seed")
      .value("--out", "out", "Output file");

  Command transcribe(app.add_subcommand("transcribe", "Send manifest audio to ASR backends"));
  transcribe.value("--manifest", "manifest", "Corpus manifest (JSON)")
      .repeated("--backend", "backend", "Backend id, or replay:<vendor> (repeatable)")
      .repeated("--condition", "condition", "omitted or retained (repeatable; default both)")
      .flag("--replay", "replay", "Serve every backend from the cache only")
      .value("--cache-dir", "cache-dir", "Response cache directory")
      .value("--max-concurrency", "max-concurrency", "In-flight requests per backend")
      .value("--initial-prompt", "initial-prompt", "Whisper prompt for the retained condition")
      .value("--min-audio-seconds", "min-audio-seconds", "Pad shorter audio before upload")
      .value("--timeout", "timeout", "Per-transcription timeout in seconds")
      .value("--base-url", "base-url", "Override the vendor API root")
      .value("--poll-interval-ms", "poll-interval-ms", "Polling interval for asynchronous vendors")
      .value("--seed", "seed", "Accepted for uniformity; transcription is not randomized")
      .value("--out", "out", "Output records file (JSON lines)")
      .normalization();

  Command evaluate(app.add_subcommand("evaluate", "Score hypotheses against references and write a report"));
  evaluate.value("--records", "records", "Records from transcribe")
      .value("--manifest", "manifest", "Corpus manifest for references and speaker metadata")
      .value("--ref-dir", "ref-dir", "Directory of <recording>.txt references")
      .repeated("--hyp-dir", "hyp-dir", "Hypothesis directory, '<dir>' or '<system>[:<condition>]=<dir>'")
      .repeated("--backend", "backend", "Transcribe from the cache first (replay:<vendor>)")
      .repeated("--condition", "condition", "Conditions to replay (default both)")
      .flag("--replay", "replay", "Serve every backend from the cache only")
      .value("--cache-dir", "cache-dir", "Response cache directory")
      .value("--max-concurrency", "max-concurrency", "In-flight requests per backend")
      .value("--annotations", "annotations", "Revision annotations: a directory or a single JSON file")
      .value("--scored-out", "scored-out", "Write scored records (JSON lines)")
      .repeated("--group", "group", "Grouping such as system,condition (repeatable)")
      .repeated("--metric", "metric", "mer, wer, efficiency or processing_time (repeatable)")
      .value("--format", "format", "json or csv (default from the --out extension)")
      .value("--timestamp", "timestamp", "Value recorded as generated_at")
      .value("--seed", "seed", "Accepted for uniformity; evaluation is deterministic")
      .value("--out", "out", "Report file")
      .normalization();

  Command report(app.add_subcommand("report", "Rebuild a report from scored records"));
  report.value("--records", "records", "Scored records (JSON lines)")
      .repeated("--group", "group", "Grouping such as system,l1 (repeatable)")
      .repeated("--metric", "metric", "mer, wer, efficiency or processing_time (repeatable)")
      .value("--format", "format", "json or csv (default from the --out extension)")
      .value("--timestamp", "timestamp", "Value recorded as generated_at")
      .value("--seed", "seed", "Accepted for uniformity")
      .value("--out", "out", "Report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  asrb_set_log_level(log_level_from(log_level));

  asrb_options* options = nullptr;
  if (asrb_options_create(&options) != ASRB_OK) {
    std::fprintf(stderr, "asrbench: %s\n", asrb_last_error());
    return kExitError;
  }
  std::unique_ptr<asrb_options, decltype(&asrb_options_destroy)> guard(options, &asrb_options_destroy);

  using Runner = asrb_status (*)(const asrb_options*, asrb_run_summary*);
  const std::vector<std::pair<const Command*, Runner>> commands{{&filter, &asrb_run_filter_corpus},
                                                                {&transcribe, &asrb_run_transcribe},
                                                                {&evaluate, &asrb_run_evaluate},
                                                                {&report, &asrb_run_report}};
  for (const auto& [command, run] : commands) {
    if (!command->app()->parsed()) continue;
    if (!command->apply(options)) return kExitError;
    asrb_run_summary summary{};
    const asrb_status status = run(options, &summary);
    if ((status == ASRB_OK || status == ASRB_ERR_PARTIAL_FAILURE) && log_level_from(log_level) <= 1)
      std::fprintf(stderr, "level=info component=cli msg=\"%llu produced, %llu failed\"\n",
                   static_cast<unsigned long long>(summary.produced),
                   static_cast<unsigned long long>(summary.failures));
    if (status == ASRB_OK) return kExitOk;
    std::fprintf(stderr, "asrbench: %s: %s\n", asrb_status_string(status), asrb_last_error());
    return status == ASRB_ERR_PARTIAL_FAILURE ? kExitPartial : kExitError;
  }
  return kExitError;
}
