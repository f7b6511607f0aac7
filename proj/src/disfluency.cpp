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

#include "asrbench/disfluency.hpp"

#include "json.hpp"

#include "asrbench/error.hpp"
#include "asrbench/metrics.hpp"

namespace asrbench {
namespace {

bool units_equal(const std::vector<std::string>& tokens, std::size_t a, std::size_t b,
                 std::size_t len) {
  for (std::size_t k = 0; k < len; ++k)
    if (tokens[a + k] != tokens[b + k]) return false;
  return true;
}

// Number of consecutive copies of tokens[start, start + len) beginning at start.
std::size_t run_copies(const std::vector<std::string>& tokens, std::size_t start,
                       std::size_t len) {
  std::size_t copies = 1;
  while (start + (copies + 1) * len <= tokens.size() &&
         units_equal(tokens, start, start + copies * len, len))
    ++copies;
  return copies;
}

bool contains_repetition(const std::vector<std::string>& tokens, std::size_t begin,
                         std::size_t end, std::size_t len) {
  for (std::size_t p = begin; p + 2 * len <= end; ++p)
    if (units_equal(tokens, p, p + len, len)) return true;
  return false;
}

}  // namespace

FillerCount count_fillers(const TokenSequence& seq, const NormalizationConfig& config) {
  FillerCount out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (config.filler_tokens.count(seq[i])) out.positions.push_back(i);
  }
  out.count = out.positions.size();
  return out;
}

double filler_detection_rate(std::size_t ref_total, std::size_t hyp_total) {
  if (ref_total == 0)
    fail(ErrorCode::kUndefinedMetric, "filler detection rate needs reference fillers");
  return static_cast<double>(hyp_total) / static_cast<double>(ref_total);
}

std::vector<Repetition> detect_repetitions(const TokenSequence& seq) {
  const auto& t = seq.tokens();
  std::vector<Repetition> out;
  std::size_t i = 0;
  while (i < t.size()) {
    // A two-token unit whose tokens are equal ("the the") is itself a
    // one-token run, so it is left to the one-token branch.
    if (i + 1 < t.size() && t[i] != t[i + 1]) {
      const std::size_t copies = run_copies(t, i, 2);
      if (copies >= 2) {
        out.push_back({{t[i], t[i + 1]}, i, copies});
        i += 2 * copies;
        continue;
      }
    }
    const std::size_t copies = run_copies(t, i, 1);
    if (copies >= 2) {
      out.push_back({{t[i]}, i, copies});
      i += copies;
      continue;
    }
    ++i;
  }
  return out;
}

std::size_t repetition_events(const std::vector<Repetition>& reps) noexcept {
  std::size_t n = 0;
  for (const auto& r : reps) n += r.events();
  return n;
}

bool repetition_retained(const Alignment& alignment, const Repetition& rep,
                         const TokenSequence& hypothesis) {
  if (rep.unit.empty() || rep.copies < 2) return false;
  const HypRange range =
      project_span(alignment, rep.start, rep.start + rep.token_length() - 1);
  return contains_repetition(hypothesis.tokens(), range.begin, range.end, rep.unit.size());
}

double repetition_retention_rate(std::size_t retained, std::size_t total) {
  if (total == 0)
    fail(ErrorCode::kUndefinedMetric, "retention rate needs reference repetitions");
  if (retained > total)
    fail(ErrorCode::kInvalidArgument, "retained repetitions exceed the reference total");
  return static_cast<double>(retained) / static_cast<double>(total);
}

RevisionScore score_revision(const TokenSequence& reference, const TokenSequence& hypothesis,
                             const RevisionSpan& span, const Alignment& alignment) {
  const HypRange range = project_span(alignment, span.ref_start, span.ref_end);
  const TokenSequence ref_part =
      reference.slice(span.ref_start, span.ref_end - span.ref_start + 1);
  const TokenSequence hyp_part = hypothesis.slice(range.begin, range.size());

  RevisionScore out;
  out.span = span;
  out.hypothesis_tokens = hyp_part.tokens();
  // A fully deleted span aligns to nothing: D = len, MER = 1.
  out.mer = mer(align(ref_part, hyp_part).counts);
  out.accuracy = 1.0 - out.mer;
  return out;
}

std::vector<RevisionSpan> parse_revision_annotations(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("revision annotations: ") + e.what());
  }
  if (!doc.is_array()) fail(ErrorCode::kParse, "revision annotations must be a JSON array");

  std::vector<RevisionSpan> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& item = doc[k];
    const std::string where = "revision annotation " + std::to_string(k);
    if (!item.is_object() || !item.contains("ref_start") || !item.contains("ref_end") ||
        !item["ref_start"].is_number_unsigned() || !item["ref_end"].is_number_unsigned())
      fail(ErrorCode::kParse, where + ": needs unsigned ref_start and ref_end");
    RevisionSpan span;
    span.ref_start = item["ref_start"].get<std::size_t>();
    span.ref_end = item["ref_end"].get<std::size_t>();
    if (auto it = item.find("label"); it != item.end() && it->is_string())
      span.label = it->get<std::string>();
    if (span.ref_start > span.ref_end)
      fail(ErrorCode::kParse, where + ": ref_start exceeds ref_end");
    out.push_back(std::move(span));
  }
  return out;
}

std::optional<double> DisfluencyReport::filler_detection_rate() const {
  if (reference_fillers == 0) return std::nullopt;
  return asrbench::filler_detection_rate(reference_fillers, hypothesis_fillers);
}

std::optional<double> DisfluencyReport::repetition_retention_rate() const {
  if (reference_repetitions == 0) return std::nullopt;
  return asrbench::repetition_retention_rate(retained_repetitions, reference_repetitions);
}

DisfluencyReport analyze_disfluencies(const TokenSequence& reference,
                                      const TokenSequence& hypothesis,
                                      const Alignment& alignment,
                                      const std::vector<RevisionSpan>& revisions,
                                      const NormalizationConfig& config) {
  DisfluencyReport out;
  out.reference_fillers = count_fillers(reference, config).count;
  out.hypothesis_fillers = count_fillers(hypothesis, config).count;

  const auto ref_reps = detect_repetitions(reference);
  out.reference_repetitions = repetition_events(ref_reps);
  out.hypothesis_repetitions = repetition_events(detect_repetitions(hypothesis));
  for (const auto& rep : ref_reps)
    if (repetition_retained(alignment, rep, hypothesis)) out.retained_repetitions += rep.events();

  for (const auto& span : revisions) {
    if (span.ref_end >= reference.size())
      fail(ErrorCode::kInvalidArgument,
           "revision '" + span.label + "' ends at token " + std::to_string(span.ref_end) +
               " but the reference has " + std::to_string(reference.size()) + " tokens");
    out.revisions.push_back(score_revision(reference, hypothesis, span, alignment));
  }
  return out;
}

}  // namespace asrbench
