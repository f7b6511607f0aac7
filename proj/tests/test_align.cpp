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

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace asrbench;
using testing::code_of;
using testing::toks;

namespace {

std::string op_string(const Alignment& a) {
  std::string s;
  for (const auto& op : a.ops) s += edit_symbol(op.kind);
  return s;
}

std::vector<std::vector<std::string>> all_strings(std::size_t max_len, const std::vector<std::string>& alphabet) {
  std::vector<std::vector<std::string>> out{{}};
  std::vector<std::vector<std::string>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& s : frontier)
      for (const auto& c : alphabet) {
        auto t = s;
        t.push_back(c);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Replays the edit script on the reference and checks it yields the hypothesis.
void check_script(const TokenSequence& ref, const TokenSequence& hyp, const Alignment& a) {
  std::vector<std::string> rebuilt;
  std::size_t next_ref = 0, next_hyp = 0;
  for (const auto& op : a.ops) {
    switch (op.kind) {
      case EditKind::kHit:
        REQUIRE(*op.ref_index == next_ref);
        REQUIRE(*op.hyp_index == next_hyp);
        REQUIRE(ref[next_ref] == hyp[next_hyp]);
        rebuilt.push_back(ref[next_ref++]);
        ++next_hyp;
        break;
      case EditKind::kSubstitution:
        REQUIRE(*op.ref_index == next_ref);
        REQUIRE(*op.hyp_index == next_hyp);
        REQUIRE(ref[next_ref] != hyp[next_hyp]);
        rebuilt.push_back(hyp[next_hyp++]);
        ++next_ref;
        break;
      case EditKind::kDeletion:
        REQUIRE(*op.ref_index == next_ref);
        REQUIRE_FALSE(op.hyp_index.has_value());
        ++next_ref;
        break;
      case EditKind::kInsertion:
        REQUIRE_FALSE(op.ref_index.has_value());
        REQUIRE(*op.hyp_index == next_hyp);
        rebuilt.push_back(hyp[next_hyp++]);
        break;
    }
  }
  CHECK(next_ref == ref.size());
  CHECK(rebuilt == hyp.tokens());
}

}  // namespace

TEST_SUITE("align") {
  TEST_CASE("worked example counts") {
    const Alignment a = align(toks("please open the windows"), toks("open a window"));
    CHECK(a.counts == ErrorCounts{1, 2, 1, 0});
    CHECK(op_string(a) == "DHSS");
  }

  TEST_CASE("empty sequences") {
    CHECK(align({}, {}).ops.empty());
    CHECK(align(toks("a b"), {}).counts == ErrorCounts{0, 0, 2, 0});
    CHECK(align({}, toks("a b")).counts == ErrorCounts{0, 0, 0, 2});
  }

  TEST_CASE("ties are broken from the sequence starts, hit before sub before del before ins") {
    CHECK(op_string(align(toks("a"), toks("b c"))) == "SI");
    CHECK(op_string(align(toks("a b"), toks("b"))) == "DH");
    CHECK(op_string(align(toks("a b"), toks("c"))) == "SD");
    CHECK(op_string(align(toks("x uh y"), toks("uh y"))) == "DHH");
    // A lone hypothesis token aligns to the earliest equal-cost reference slot.
    CHECK(op_string(align(toks("which uh who"), toks("who"))) == "DDH");
  }

  TEST_CASE("alignment is deterministic") {
    const auto r = toks("the cat sat on the mat the end");
    const auto h = toks("a cat sat the on mat end the");
    const Alignment first = align(r, h);
    for (int i = 0; i < 5; ++i) CHECK(op_string(align(r, h)) == op_string(first));
  }

  TEST_CASE("edit distance matches an independent recursion (lengths up to 4)") {
    const auto strings = all_strings(4, {"a", "b", "c"});
    std::size_t pairs = 0;
    for (const auto& r : strings)
      for (const auto& h : strings) {
        const TokenSequence ref(r), hyp(h);
        const Alignment a = align(ref, hyp);
        REQUIRE(a.counts.errors() == oracle::edit_distance(r, h));
        REQUIRE(a.counts.reference_length() == r.size());
        REQUIRE(a.counts.hypothesis_length() == h.size());
        ++pairs;
      }
    CHECK(pairs == 121 * 121);
  }

  TEST_CASE("edit scripts replay to the hypothesis") {
    const auto strings = all_strings(3, {"a", "b", "c"});
    for (const auto& r : strings)
      for (const auto& h : strings) check_script(TokenSequence(r), TokenSequence(h), align(TokenSequence(r), TokenSequence(h)));
  }

  TEST_CASE("span projection") {
    const Alignment a = align(toks("a b c d"), toks("a x d"));
    REQUIRE(op_string(a) == "HSDH");
    CHECK(project_span(a, 2, 2).empty());
    const HypRange r12 = project_span(a, 1, 2);
    CHECK(r12.begin == 1);
    CHECK(r12.end == 2);
    const HypRange all = project_span(a, 0, 3);
    CHECK(all.begin == 0);
    CHECK(all.end == 3);
    CHECK(all.size() == 3);
  }

  TEST_CASE("interior insertions fall inside the projection, edge insertions do not") {
    const Alignment a = align(toks("a b"), toks("z a q b z"));
    REQUIRE(a.counts == ErrorCounts{2, 0, 0, 3});
    const HypRange r = project_span(a, 0, 1);
    CHECK(r.begin == 1);
    CHECK(r.end == 4);
  }

  TEST_CASE("span bounds are validated") {
    const Alignment a = align(toks("a b"), toks("a b"));
    CHECK(code_of([&] { project_span(a, 0, 2); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { project_span(a, 1, 0); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { project_span(align({}, {}), 0, 0); }) == ErrorCode::kInvalidArgument);
  }
}
