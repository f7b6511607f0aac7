/*
 * Copyright 2026 The asrbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libasrbench.
 *
 * Every fallible call returns an asrb_status. On failure the message for the
 * calling thread is available from asrb_last_error() until the next call on
 * that thread. Objects are opaque handles created by *_create / producer
 * functions and released with the matching *_destroy; destroy functions
 * accept NULL. Strings are UTF-8 and NUL-terminated.
 */

#ifndef ASRBENCH_H_
#define ASRBENCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ASRBENCH_BUILDING)
#    define ASRB_API __declspec(dllexport)
#  else
#    define ASRB_API __declspec(dllimport)
#  endif
#else
#  define ASRB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum asrb_status {
  ASRB_OK = 0,
  ASRB_ERR_INVALID_ARGUMENT = 1,
  ASRB_ERR_UNDEFINED_METRIC = 2,
  ASRB_ERR_INVALID_MEASUREMENT = 3,
  ASRB_ERR_PARSE = 4,
  ASRB_ERR_INTEGRITY = 5,
  ASRB_ERR_FORMAT = 6,
  ASRB_ERR_IO = 7,
  ASRB_ERR_CONFIG = 8,
  ASRB_ERR_DEGENERATE_TEST = 9,
  ASRB_ERR_AUTH = 10,
  ASRB_ERR_TIMEOUT = 11,
  ASRB_ERR_VENDOR_REJECTED = 12,
  ASRB_ERR_TRANSPORT = 13,
  ASRB_ERR_CACHE_MISS = 14,
  ASRB_ERR_PARTIAL_FAILURE = 15,
  ASRB_ERR_INTERNAL = 99
} asrb_status;

ASRB_API const char* asrb_version(void);
ASRB_API const char* asrb_status_string(asrb_status status);
ASRB_API const char* asrb_last_error(void);

/* 0 debug, 1 info, 2 warn (default), 3 error, 4 off */
ASRB_API void asrb_set_log_level(int level);

/* ------------------------------------------------------------------------ */
/* Normalization                                                            */

typedef struct asrb_normalizer asrb_normalizer;
typedef struct asrb_tokens asrb_tokens;

ASRB_API asrb_status asrb_normalizer_create(asrb_normalizer** out);
ASRB_API void asrb_normalizer_destroy(asrb_normalizer* normalizer);
/* name: "strip_vendor_tags" or "strip_leading_speaker_stamp" */
ASRB_API asrb_status asrb_normalizer_set_flag(asrb_normalizer* normalizer,
                                              const char* name, int value);
ASRB_API asrb_status asrb_normalizer_set_speaker_stamp_pattern(
    asrb_normalizer* normalizer, const char* ecmascript_regex);
ASRB_API asrb_status asrb_normalizer_set_fillers(asrb_normalizer* normalizer,
                                                 const char* const* fillers,
                                                 size_t count);
ASRB_API asrb_status asrb_normalizer_add_digit_word(asrb_normalizer* normalizer,
                                                    const char* digits,
                                                    const char* words);

/* normalizer may be NULL for the defaults. */
ASRB_API asrb_status asrb_normalize(const asrb_normalizer* normalizer,
                                    const char* text, asrb_tokens** out);
ASRB_API size_t asrb_tokens_size(const asrb_tokens* tokens);
/* NULL when index is out of range. Valid until the handle is destroyed. */
ASRB_API const char* asrb_tokens_at(const asrb_tokens* tokens, size_t index);
ASRB_API void asrb_tokens_destroy(asrb_tokens* tokens);

/* ------------------------------------------------------------------------ */
/* Alignment and metrics                                                    */

typedef struct asrb_counts {
  uint64_t hits;
  uint64_t substitutions;
  uint64_t deletions;
  uint64_t insertions;
} asrb_counts;

typedef struct asrb_score {
  asrb_counts counts;
  double wer;
  double mer;
  double accuracy;
} asrb_score;

typedef struct asrb_alignment asrb_alignment;

ASRB_API asrb_status asrb_align_texts(const asrb_normalizer* normalizer,
                                      const char* reference,
                                      const char* hypothesis,
                                      asrb_alignment** out);
ASRB_API size_t asrb_alignment_size(const asrb_alignment* alignment);
/* kind is one of 'H', 'S', 'D', 'I'; absent indices are reported as -1. */
ASRB_API asrb_status asrb_alignment_op(const asrb_alignment* alignment,
                                       size_t index, char* kind,
                                       int64_t* ref_index, int64_t* hyp_index);
ASRB_API asrb_counts asrb_alignment_counts(const asrb_alignment* alignment);
/* Inclusive reference span -> half-open hypothesis range [*begin, *end). */
ASRB_API asrb_status asrb_alignment_project_span(const asrb_alignment* alignment,
                                                 size_t ref_start, size_t ref_end,
                                                 size_t* begin, size_t* end);
ASRB_API void asrb_alignment_destroy(asrb_alignment* alignment);

/* WER fails with ASRB_ERR_UNDEFINED_METRIC for an empty reference. */
ASRB_API asrb_status asrb_score_texts(const asrb_normalizer* normalizer,
                                      const char* reference,
                                      const char* hypothesis, asrb_score* out);
ASRB_API asrb_status asrb_wer(const asrb_counts* counts, double* out);
ASRB_API asrb_status asrb_mer(const asrb_counts* counts, double* out);
ASRB_API asrb_status asrb_efficiency(double mer, double processing_time_s,
                                     double* out);

/* ------------------------------------------------------------------------ */
/* Disfluencies                                                             */

ASRB_API asrb_status asrb_count_fillers(const asrb_normalizer* normalizer,
                                        const char* text, size_t* out);
/* Repetition events (a run of c copies counts c - 1). */
ASRB_API asrb_status asrb_count_repetitions(const asrb_normalizer* normalizer,
                                            const char* text, size_t* out);
ASRB_API asrb_status asrb_filler_detection_rate(size_t reference_total,
                                                size_t hypothesis_total,
                                                double* out);
ASRB_API asrb_status asrb_repetition_retention_rate(size_t retained,
                                                    size_t total, double* out);
/* Scores the inclusive reference token span [ref_start, ref_end]. */
ASRB_API asrb_status asrb_score_revision(const asrb_normalizer* normalizer,
                                         const char* reference,
                                         const char* hypothesis,
                                         size_t ref_start, size_t ref_end,
                                         double* mer);

/* ------------------------------------------------------------------------ */
/* Audio                                                                    */

ASRB_API asrb_status asrb_pad_wav_file(const char* input_path,
                                       const char* output_path,
                                       double target_seconds);

/* ------------------------------------------------------------------------ */
/* Statistics                                                               */

typedef struct asrb_test_result {
  double statistic;
  double df;
  double p_value;
  double effect_size;
  int has_effect_size;
} asrb_test_result;

/* matrix is row-major, one row per subject. */
ASRB_API asrb_status asrb_friedman(const double* matrix, size_t subjects,
                                   size_t treatments, asrb_test_result* out);
ASRB_API asrb_status asrb_paired_t(const double* x, const double* y, size_t n,
                                   asrb_test_result* out);
ASRB_API asrb_status asrb_spearman(const double* x, const double* y, size_t n,
                                   asrb_test_result* out);
ASRB_API asrb_status asrb_chi_square(const double* table, size_t rows,
                                     size_t cols, asrb_test_result* out);

/* ------------------------------------------------------------------------ */
/* Workflow commands                                                        */

typedef struct asrb_options asrb_options;

typedef struct asrb_run_summary {
  uint64_t produced;
  uint64_t failures;
} asrb_run_summary;

ASRB_API asrb_status asrb_options_create(asrb_options** out);
ASRB_API void asrb_options_destroy(asrb_options* options);
/*
 * Keys: prompts, wordlist, k, seed, manifest, backend*, condition*, replay,
 * cache-dir, max-concurrency, initial-prompt, min-audio-seconds, timeout,
 * base-url, poll-interval-ms, records, ref-dir, hyp-dir*, annotations,
 * scored-out, group*, metric*, format, timestamp, out, keep-digits,
 * digit-map, strip-tags, strip-speaker-stamp, filler*.
 * Keys marked * may be given repeatedly and accumulate.
 */
ASRB_API asrb_status asrb_options_set(asrb_options* options, const char* key,
                                      const char* value);

/* Return ASRB_ERR_PARTIAL_FAILURE (summary still filled) when some items
 * failed and the rest completed. summary may be NULL. */
ASRB_API asrb_status asrb_run_filter_corpus(const asrb_options* options,
                                            asrb_run_summary* summary);
ASRB_API asrb_status asrb_run_transcribe(const asrb_options* options,
                                         asrb_run_summary* summary);
ASRB_API asrb_status asrb_run_evaluate(const asrb_options* options,
                                       asrb_run_summary* summary);
ASRB_API asrb_status asrb_run_report(const asrb_options* options,
                                     asrb_run_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* ASRBENCH_H_ */
