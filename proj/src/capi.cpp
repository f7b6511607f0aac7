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

#include "asrbench/asrbench.h"

#include <new>
#include <string>

#include "asrbench/align.hpp"
#include "asrbench/disfluency.hpp"
#include "asrbench/log.hpp"
#include "asrbench/metrics.hpp"
#include "asrbench/pipeline.hpp"
#include "asrbench/report.hpp"
#include "asrbench/stats.hpp"
#include "asrbench/util.hpp"
#include "asrbench/wav.hpp"

struct asrb_normalizer {
  asrbench::NormalizationConfig config;
};

struct asrb_tokens {
  asrbench::TokenSequence tokens;
};

struct asrb_alignment {
  asrbench::Alignment alignment;
};

struct asrb_options {
  asrbench::PipelineOptions options;
};

namespace {

thread_local std::string g_last_error;

const std::string kToolVersionString{asrbench::kToolVersion};

asrb_status record(asrb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes and the thread's last error.
template <typename Fn>
asrb_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    return fn();
  } catch (const asrbench::Error& e) {
    return record(static_cast<asrb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(ASRB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(ASRB_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(ASRB_ERR_INTERNAL, "unknown exception");
  }
}

asrb_status null_argument(const char* name) {
  return record(ASRB_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

const asrbench::NormalizationConfig& config_of(const asrb_normalizer* n) {
  static const asrbench::NormalizationConfig defaults;
  return n ? n->config : defaults;
}

asrbench::ErrorCounts from_c(const asrb_counts& c) {
  return {static_cast<std::size_t>(c.hits), static_cast<std::size_t>(c.substitutions),
          static_cast<std::size_t>(c.deletions), static_cast<std::size_t>(c.insertions)};
}

asrb_counts to_c(const asrbench::ErrorCounts& c) {
  return {c.hits, c.substitutions, c.deletions, c.insertions};
}

asrb_test_result to_c(const asrbench::stats::TestResult& r) {
  return {r.statistic, r.df, r.p_value, r.effect_size.value_or(0.0), r.effect_size ? 1 : 0};
}

asrb_status summarize(const asrbench::RunSummary& s, asrb_run_summary* out) {
  if (out) *out = {s.produced, s.failures};
  if (s.failures > 0)
    return record(ASRB_ERR_PARTIAL_FAILURE,
                  std::to_string(s.failures) + " item(s) failed, " + std::to_string(s.produced) + " produced");
  return ASRB_OK;
}

}  // namespace

extern "C" {

const char* asrb_version(void) { return kToolVersionString.c_str(); }

const char* asrb_status_string(asrb_status status) {
  switch (status) {
    case ASRB_OK: return "ok";
    case ASRB_ERR_PARTIAL_FAILURE: return "partial-failure";
    default: break;
  }
  static thread_local std::string text;
  text = std::string(asrbench::to_string(static_cast<asrbench::ErrorCode>(status)));
  return text.c_str();
}

const char* asrb_last_error(void) { return g_last_error.c_str(); }

void asrb_set_log_level(int level) {
  if (level < 0) level = 0;
  if (level > 4) level = 4;
  asrbench::log::set_level(static_cast<asrbench::log::Level>(level));
}

// ---------------------------------------------------------------------------

asrb_status asrb_normalizer_create(asrb_normalizer** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new asrb_normalizer{};
    return ASRB_OK;
  });
}

void asrb_normalizer_destroy(asrb_normalizer* normalizer) { delete normalizer; }

asrb_status asrb_normalizer_set_flag(asrb_normalizer* normalizer, const char* name, int value) {
  if (!normalizer) return null_argument("normalizer");
  if (!name) return null_argument("name");
  const std::string_view n(name);
  if (n == "strip_vendor_tags") normalizer->config.strip_vendor_tags = value != 0;
  else if (n == "strip_leading_speaker_stamp") normalizer->config.strip_leading_speaker_stamp = value != 0;
  else return record(ASRB_ERR_INVALID_ARGUMENT, "unknown normalizer flag '" + std::string(n) + "'");
  return ASRB_OK;
}

asrb_status asrb_normalizer_set_speaker_stamp_pattern(asrb_normalizer* normalizer, const char* ecmascript_regex) {
  if (!normalizer) return null_argument("normalizer");
  if (!ecmascript_regex) return null_argument("ecmascript_regex");
  return guarded([&] {
    asrbench::NormalizationConfig candidate = normalizer->config;
    candidate.speaker_stamp_pattern = ecmascript_regex;
    candidate.validate();
    normalizer->config = std::move(candidate);
    return ASRB_OK;
  });
}

asrb_status asrb_normalizer_set_fillers(asrb_normalizer* normalizer, const char* const* fillers, size_t count) {
  if (!normalizer) return null_argument("normalizer");
  if (count > 0 && !fillers) return null_argument("fillers");
  return guarded([&] {
    std::set<std::string> tokens;
    for (size_t i = 0; i < count; ++i) {
      if (!fillers[i]) fail(asrbench::ErrorCode::kInvalidArgument, "filler entries must not be NULL");
      for (const auto& t : asrbench::normalize(fillers[i])) tokens.insert(t);
    }
    asrbench::NormalizationConfig candidate = normalizer->config;
    candidate.filler_tokens = std::move(tokens);
    candidate.validate();
    normalizer->config = std::move(candidate);
    return ASRB_OK;
  });
}

asrb_status asrb_normalizer_add_digit_word(asrb_normalizer* normalizer, const char* digits, const char* words) {
  if (!normalizer) return null_argument("normalizer");
  if (!digits || !words) return null_argument("digits/words");
  return guarded([&] {
    auto& map = normalizer->config.digit_word_map;
    if (!map) map.emplace();
    (*map)[digits] = words;
    return ASRB_OK;
  });
}

asrb_status asrb_normalize(const asrb_normalizer* normalizer, const char* text, asrb_tokens** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new asrb_tokens{asrbench::normalize(text, config_of(normalizer))};
    return ASRB_OK;
  });
}

size_t asrb_tokens_size(const asrb_tokens* tokens) { return tokens ? tokens->tokens.size() : 0; }

const char* asrb_tokens_at(const asrb_tokens* tokens, size_t index) {
  if (!tokens || index >= tokens->tokens.size()) return nullptr;
  return tokens->tokens[index].c_str();
}

void asrb_tokens_destroy(asrb_tokens* tokens) { delete tokens; }

// ---------------------------------------------------------------------------

asrb_status asrb_align_texts(const asrb_normalizer* normalizer, const char* reference, const char* hypothesis,
                             asrb_alignment** out) {
  if (!reference || !hypothesis) return null_argument("reference/hypothesis");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& cfg = config_of(normalizer);
    *out = new asrb_alignment{asrbench::align(asrbench::normalize(reference, cfg),
                                              asrbench::normalize(hypothesis, cfg))};
    return ASRB_OK;
  });
}

size_t asrb_alignment_size(const asrb_alignment* alignment) {
  return alignment ? alignment->alignment.ops.size() : 0;
}

asrb_status asrb_alignment_op(const asrb_alignment* alignment, size_t index, char* kind, int64_t* ref_index,
                              int64_t* hyp_index) {
  if (!alignment) return null_argument("alignment");
  if (index >= alignment->alignment.ops.size())
    return record(ASRB_ERR_INVALID_ARGUMENT, "operation index out of range");
  const auto& op = alignment->alignment.ops[index];
  if (kind) *kind = asrbench::edit_symbol(op.kind);
  if (ref_index) *ref_index = op.ref_index ? static_cast<int64_t>(*op.ref_index) : -1;
  if (hyp_index) *hyp_index = op.hyp_index ? static_cast<int64_t>(*op.hyp_index) : -1;
  return ASRB_OK;
}

asrb_counts asrb_alignment_counts(const asrb_alignment* alignment) {
  return alignment ? to_c(alignment->alignment.counts) : asrb_counts{0, 0, 0, 0};
}

asrb_status asrb_alignment_project_span(const asrb_alignment* alignment, size_t ref_start, size_t ref_end,
                                        size_t* begin, size_t* end) {
  if (!alignment) return null_argument("alignment");
  if (!begin || !end) return null_argument("begin/end");
  return guarded([&] {
    const auto range = asrbench::project_span(alignment->alignment, ref_start, ref_end);
    *begin = range.begin;
    *end = range.end;
    return ASRB_OK;
  });
}

void asrb_alignment_destroy(asrb_alignment* alignment) { delete alignment; }

asrb_status asrb_score_texts(const asrb_normalizer* normalizer, const char* reference, const char* hypothesis,
                             asrb_score* out) {
  if (!reference || !hypothesis) return null_argument("reference/hypothesis");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& cfg = config_of(normalizer);
    const auto s = asrbench::score(asrbench::normalize(reference, cfg), asrbench::normalize(hypothesis, cfg));
    *out = {to_c(s.counts), s.wer, s.mer, s.accuracy};
    return ASRB_OK;
  });
}

asrb_status asrb_wer(const asrb_counts* counts, double* out) {
  if (!counts || !out) return null_argument("counts/out");
  return guarded([&] {
    *out = asrbench::wer(from_c(*counts));
    return ASRB_OK;
  });
}

asrb_status asrb_mer(const asrb_counts* counts, double* out) {
  if (!counts || !out) return null_argument("counts/out");
  return guarded([&] {
    *out = asrbench::mer(from_c(*counts));
    return ASRB_OK;
  });
}

asrb_status asrb_efficiency(double mer, double processing_time_s, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = asrbench::efficiency(mer, processing_time_s).value;
    return ASRB_OK;
  });
}

// ---------------------------------------------------------------------------

asrb_status asrb_count_fillers(const asrb_normalizer* normalizer, const char* text, size_t* out) {
  if (!text || !out) return null_argument("text/out");
  return guarded([&] {
    const auto& cfg = config_of(normalizer);
    *out = asrbench::count_fillers(asrbench::normalize(text, cfg), cfg).count;
    return ASRB_OK;
  });
}

asrb_status asrb_count_repetitions(const asrb_normalizer* normalizer, const char* text, size_t* out) {
  if (!text || !out) return null_argument("text/out");
  return guarded([&] {
    const auto& cfg = config_of(normalizer);
    *out = asrbench::repetition_events(asrbench::detect_repetitions(asrbench::normalize(text, cfg)));
    return ASRB_OK;
  });
}

asrb_status asrb_filler_detection_rate(size_t reference_total, size_t hypothesis_total, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = asrbench::filler_detection_rate(reference_total, hypothesis_total);
    return ASRB_OK;
  });
}

asrb_status asrb_repetition_retention_rate(size_t retained, size_t total, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = asrbench::repetition_retention_rate(retained, total);
    return ASRB_OK;
  });
}

asrb_status asrb_score_revision(const asrb_normalizer* normalizer, const char* reference, const char* hypothesis,
                                size_t ref_start, size_t ref_end, double* mer) {
  if (!reference || !hypothesis) return null_argument("reference/hypothesis");
  if (!mer) return null_argument("mer");
  return guarded([&] {
    const auto& cfg = config_of(normalizer);
    const auto ref = asrbench::normalize(reference, cfg);
    const auto hyp = asrbench::normalize(hypothesis, cfg);
    const auto alignment = asrbench::align(ref, hyp);
    *mer = asrbench::score_revision(ref, hyp, {ref_start, ref_end, {}}, alignment).mer;
    return ASRB_OK;
  });
}

// ---------------------------------------------------------------------------

asrb_status asrb_pad_wav_file(const char* input_path, const char* output_path, double target_seconds) {
  if (!input_path || !output_path) return null_argument("input_path/output_path");
  return guarded([&] {
    const auto in = asrbench::read_file(input_path);
    asrbench::write_file_atomic(output_path, asrbench::pad_audio(in, target_seconds));
    return ASRB_OK;
  });
}

// ---------------------------------------------------------------------------

asrb_status asrb_friedman(const double* matrix, size_t subjects, size_t treatments, asrb_test_result* out) {
  if (!out || (!matrix && subjects * treatments > 0)) return null_argument("matrix/out");
  return guarded([&] {
    std::vector<std::vector<double>> m(subjects);
    for (size_t i = 0; i < subjects; ++i) m[i].assign(matrix + i * treatments, matrix + (i + 1) * treatments);
    *out = to_c(asrbench::stats::friedman(m));
    return ASRB_OK;
  });
}

asrb_status asrb_paired_t(const double* x, const double* y, size_t n, asrb_test_result* out) {
  if (!out || ((!x || !y) && n > 0)) return null_argument("x/y/out");
  return guarded([&] {
    *out = to_c(asrbench::stats::paired_t({x, n}, {y, n}));
    return ASRB_OK;
  });
}

asrb_status asrb_spearman(const double* x, const double* y, size_t n, asrb_test_result* out) {
  if (!out || ((!x || !y) && n > 0)) return null_argument("x/y/out");
  return guarded([&] {
    *out = to_c(asrbench::stats::spearman({x, n}, {y, n}));
    return ASRB_OK;
  });
}

asrb_status asrb_chi_square(const double* table, size_t rows, size_t cols, asrb_test_result* out) {
  if (!out || (!table && rows * cols > 0)) return null_argument("table/out");
  return guarded([&] {
    std::vector<std::vector<double>> t(rows);
    for (size_t i = 0; i < rows; ++i) t[i].assign(table + i * cols, table + (i + 1) * cols);
    *out = to_c(asrbench::stats::chi_square_counts(t));
    return ASRB_OK;
  });
}

// ---------------------------------------------------------------------------

asrb_status asrb_options_create(asrb_options** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new asrb_options{};
    return ASRB_OK;
  });
}

void asrb_options_destroy(asrb_options* options) { delete options; }

asrb_status asrb_options_set(asrb_options* options, const char* key, const char* value) {
  if (!options) return null_argument("options");
  if (!key || !value) return null_argument("key/value");
  return guarded([&] {
    options->options.set(key, value);
    return ASRB_OK;
  });
}

asrb_status asrb_run_filter_corpus(const asrb_options* options, asrb_run_summary* summary) {
  if (!options) return null_argument("options");
  return guarded([&] { return summarize(asrbench::cmd_filter_corpus(options->options), summary); });
}

asrb_status asrb_run_transcribe(const asrb_options* options, asrb_run_summary* summary) {
  if (!options) return null_argument("options");
  return guarded([&] { return summarize(asrbench::cmd_transcribe(options->options), summary); });
}

asrb_status asrb_run_evaluate(const asrb_options* options, asrb_run_summary* summary) {
  if (!options) return null_argument("options");
  return guarded([&] { return summarize(asrbench::cmd_evaluate(options->options), summary); });
}

asrb_status asrb_run_report(const asrb_options* options, asrb_run_summary* summary) {
  if (!options) return null_argument("options");
  return guarded([&] { return summarize(asrbench::cmd_report(options->options), summary); });
}

}  // extern "C"
