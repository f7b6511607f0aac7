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

#pragma once

#include "asrbench/align.hpp"

namespace asrbench {

/// (S + D + I) / (S + D + H). Unbounded above.
/// Throws kUndefinedMetric for an empty reference.
double wer(const ErrorCounts& counts);

/// (S + D + I) / (S + D + H + I), always in [0, 1].
/// Throws kUndefinedMetric when both sequences are empty.
double mer(const ErrorCounts& counts);

struct ScoreReport {
  double wer = 0.0;
  double mer = 0.0;
  double accuracy = 0.0;  // 1 - mer
  ErrorCounts counts;
};

ScoreReport score(const ErrorCounts& counts);
ScoreReport score(const TokenSequence& reference, const TokenSequence& hypothesis);

struct EfficiencyScore {
  double value = 0.0;  // accuracy per second
  double accuracy = 0.0;
  double processing_time = 0.0;
};

/// (1 - mer) / processing_time. Throws kInvalidMeasurement for a
/// nonpositive time or mer outside [0, 1].
EfficiencyScore efficiency(double mer, double processing_time_s);

}  // namespace asrbench
