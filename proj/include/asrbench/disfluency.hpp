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

// Filler, repetition and revision analysis over normalized transcripts.
//
// Fillers are counted wherever they occur (a vendor may emit more fillers
// than the speaker produced, so detection rates can exceed 1). Repetitions
// are immediate exact repeats of a one- or two-token unit. Revisions are not
// detected here; they arrive as annotated reference spans and are scored by
// projecting the span through the full alignment and re-aligning locally.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asrbench/align.hpp"
#include "asrbench/textnorm.hpp"

namespace asrbench {

struct FillerCount {
  std::size_t count = 0;
  std::vector<std::size_t> positions;
};

FillerCount count_fillers(const TokenSequence& seq,
                          const NormalizationConfig& config = {});

/// hyp_total / ref_total; may exceed 1. Throws kUndefinedMetric when
/// ref_total is zero.
double filler_detection_rate(std::size_t ref_total, std::size_t hyp_total);

struct Repetition {
  std::vector<std::string> unit;  // one or two tokens
  std::size_t start = 0;
  std::size_t copies = 2;

  std::size_t token_length() const noexcept { return unit.size() * copies; }
  /// A run of c copies counts as c - 1 repetition events.
  std::size_t events() const noexcept { return copies - 1; }
  friend bool operator==(const Repetition&, const Repetition&) = default;
};

/// Greedy left-to-right scan for maximal, non-overlapping runs. A two-token
/// unit wins over a one-token unit starting at the same position.
std::vector<Repetition> detect_repetitions(const TokenSequence& seq);

std::size_t repetition_events(const std::vector<Repetition>& reps) noexcept;

/// True when the hypothesis tokens projected from the repetition's reference
/// range themselves contain an immediate exact repetition of some unit with
/// the same length as rep.unit. Surface forms may differ from the reference.
bool repetition_retained(const Alignment& alignment, const Repetition& rep,
                         const TokenSequence& hypothesis);

/// retained / total, in [0, 1]. Throws kUndefinedMetric when total is zero
/// and kInvalidArgument when retained > total.
double repetition_retention_rate(std::size_t retained, std::size_t total);

struct RevisionSpan {
  std::size_t ref_start = 0;
  std::size_t ref_end = 0;  // inclusive
  std::string label;

  friend bool operator==(const RevisionSpan&, const RevisionSpan&) = default;
};

struct RevisionScore {
  RevisionSpan span;
  std::vector<std::string> hypothesis_tokens;  // extracted revision text
  double mer = 0.0;
  double accuracy = 0.0;
};

RevisionScore score_revision(const TokenSequence& reference,
                             const TokenSequence& hypothesis,
                             const RevisionSpan& span,
                             const Alignment& alignment);

/// Revision annotations: a JSON array of {ref_start, ref_end, label}.
std::vector<RevisionSpan> parse_revision_annotations(std::string_view json_text);

struct DisfluencyReport {
  std::size_t reference_fillers = 0;
  std::size_t hypothesis_fillers = 0;
  std::size_t reference_repetitions = 0;  // events
  std::size_t hypothesis_repetitions = 0;  // events
  std::size_t retained_repetitions = 0;    // events
  std::vector<RevisionScore> revisions;

  /// Empty when the reference has no fillers / repetitions.
  std::optional<double> filler_detection_rate() const;
  std::optional<double> repetition_retention_rate() const;
};

DisfluencyReport analyze_disfluencies(const TokenSequence& reference,
                                      const TokenSequence& hypothesis,
                                      const Alignment& alignment,
                                      const std::vector<RevisionSpan>& revisions,
                                      const NormalizationConfig& config = {});

}  // namespace asrbench
