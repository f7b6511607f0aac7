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

#include "asrbench/align.hpp"

#include <cstdint>
#include <limits>

#include "asrbench/error.hpp"

namespace asrbench {

char edit_symbol(EditKind kind) noexcept {
  switch (kind) {
    case EditKind::kHit: return 'H';
    case EditKind::kSubstitution: return 'S';
    case EditKind::kDeletion: return 'D';
    case EditKind::kInsertion: return 'I';
  }
  return '?';
}

Alignment align(const TokenSequence& reference, const TokenSequence& hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  const std::size_t width = m + 1;

  // cost[i * width + j] = edit distance between reference[i..) and
  // hypothesis[j..). Filling from the back lets the trace run forward.
  std::vector<std::uint32_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return cost[i * width + j]; };
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        at(i, j) = static_cast<std::uint32_t>(m - j);
      } else if (j == m) {
        at(i, j) = static_cast<std::uint32_t>(n - i);
      } else {
        const std::uint32_t diag = at(i + 1, j + 1) + (reference[i] == hypothesis[j] ? 0u : 1u);
        const std::uint32_t del = at(i + 1, j) + 1;
        const std::uint32_t ins = at(i, j + 1) + 1;
        at(i, j) = std::min({diag, del, ins});
      }
    }
  }

  Alignment out;
  out.reference_length = n;
  out.hypothesis_length = m;
  out.ops.reserve(n + m);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    const std::uint32_t here = at(i, j);
    if (i < n && j < m && reference[i] == hypothesis[j] && here == at(i + 1, j + 1)) {
      out.ops.push_back({EditKind::kHit, i, j});
      ++out.counts.hits;
      ++i, ++j;
    } else if (i < n && j < m && reference[i] != hypothesis[j] && here == at(i + 1, j + 1) + 1) {
      out.ops.push_back({EditKind::kSubstitution, i, j});
      ++out.counts.substitutions;
      ++i, ++j;
    } else if (i < n && here == at(i + 1, j) + 1) {
      out.ops.push_back({EditKind::kDeletion, i, std::nullopt});
      ++out.counts.deletions;
      ++i;
    } else {
      out.ops.push_back({EditKind::kInsertion, std::nullopt, j});
      ++out.counts.insertions;
      ++j;
    }
  }
  return out;
}

HypRange project_span(const Alignment& alignment, std::size_t ref_start, std::size_t ref_end,
                      BoundaryRule /*rule*/) {
  if (ref_start > ref_end || ref_end >= alignment.reference_length)
    fail(ErrorCode::kInvalidArgument,
         "span [" + std::to_string(ref_start) + ", " + std::to_string(ref_end) +
             "] outside reference of length " + std::to_string(alignment.reference_length));

  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = 0;
  for (const EditOp& op : alignment.ops) {
    if (op.kind != EditKind::kHit && op.kind != EditKind::kSubstitution) continue;
    if (*op.ref_index < ref_start || *op.ref_index > ref_end) continue;
    lo = std::min(lo, *op.hyp_index);
    hi = std::max(hi, *op.hyp_index);
  }
  // Insertions between the first and last anchor fall inside [lo, hi]
  // because the alignment is monotone; edge insertions fall outside.
  if (lo == std::numeric_limits<std::size_t>::max()) return {};
  return {lo, hi + 1};
}

}  // namespace asrbench
