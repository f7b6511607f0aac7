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

#include "asrbench/metrics.hpp"

#include <cmath>

#include "asrbench/error.hpp"

namespace asrbench {

double wer(const ErrorCounts& c) {
  const std::size_t denom = c.substitutions + c.deletions + c.hits;
  if (denom == 0) fail(ErrorCode::kUndefinedMetric, "WER is undefined for an empty reference");
  return static_cast<double>(c.errors()) / static_cast<double>(denom);
}

double mer(const ErrorCounts& c) {
  const std::size_t denom = c.substitutions + c.deletions + c.hits + c.insertions;
  if (denom == 0)
    fail(ErrorCode::kUndefinedMetric, "MER is undefined when both sequences are empty");
  return static_cast<double>(c.errors()) / static_cast<double>(denom);
}

ScoreReport score(const ErrorCounts& counts) {
  ScoreReport r;
  r.counts = counts;
  r.wer = wer(counts);
  r.mer = mer(counts);
  r.accuracy = 1.0 - r.mer;
  return r;
}

ScoreReport score(const TokenSequence& reference, const TokenSequence& hypothesis) {
  return score(align(reference, hypothesis).counts);
}

EfficiencyScore efficiency(double mer_value, double processing_time_s) {
  if (!(processing_time_s > 0.0) || !std::isfinite(processing_time_s))
    fail(ErrorCode::kInvalidMeasurement, "processing time must be positive");
  if (!(mer_value >= 0.0 && mer_value <= 1.0))
    fail(ErrorCode::kInvalidMeasurement, "MER must lie in [0, 1]");
  EfficiencyScore e;
  e.accuracy = 1.0 - mer_value;
  e.processing_time = processing_time_s;
  e.value = e.accuracy / processing_time_s;
  return e;
}

}  // namespace asrbench
