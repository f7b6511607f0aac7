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

#include <cstddef>
#include <optional>
#include <vector>

#include "asrbench/textnorm.hpp"

namespace asrbench {

enum class EditKind { kHit, kSubstitution, kDeletion, kInsertion };

char edit_symbol(EditKind kind) noexcept;  // 'H', 'S', 'D', 'I'

struct EditOp {
  EditKind kind;
  std::optional<std::size_t> ref_index;  // absent for insertions
  std::optional<std::size_t> hyp_index;  // absent for deletions

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct ErrorCounts {
  std::size_t hits = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t errors() const noexcept {
    return substitutions + deletions + insertions;
  }
  std::size_t reference_length() const noexcept {
    return hits + substitutions + deletions;
  }
  std::size_t hypothesis_length() const noexcept {
    return hits + substitutions + insertions;
  }

  ErrorCounts& operator+=(const ErrorCounts& o) noexcept {
    hits += o.hits;
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    return *this;
  }
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  ErrorCounts counts;
  std::size_t reference_length = 0;
  std::size_t hypothesis_length = 0;
};

/// Unit-cost Levenshtein alignment of two token sequences.
///
/// Among all minimum-cost alignments the one returned is fixed: the trace
/// starts at the beginning of both sequences and, at every step, takes the
/// first of hit, substitution, deletion, insertion that stays on an optimal
/// path. Matching tokens are therefore paired as early as possible.
Alignment align(const TokenSequence& reference, const TokenSequence& hypothesis);

/// Half-open range of hypothesis positions.
struct HypRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const noexcept { return begin == end; }
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const HypRange&, const HypRange&) = default;
};

enum class BoundaryRule { kInsideOnly };

/// Maps the inclusive reference span [ref_start, ref_end] onto the
/// hypothesis. The result covers every hypothesis token aligned (hit or
/// substitution) to a reference token in the span, plus insertions lying
/// between two such anchors. Insertions at the span edges are excluded and a
/// fully deleted span projects to an empty range.
HypRange project_span(const Alignment& alignment, std::size_t ref_start,
                      std::size_t ref_end,
                      BoundaryRule rule = BoundaryRule::kInsideOnly);

}  // namespace asrbench
