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

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "asrbench/asrbench.h"
#include "doctest.h"

namespace {

std::string joined(const asrb_tokens* t) {
  std::string s;
  for (size_t i = 0; i < asrb_tokens_size(t); ++i) s += (i ? " " : "") + std::string(asrb_tokens_at(t, i));
  return s;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and status strings") {
    CHECK(std::strlen(asrb_version()) > 0);
    CHECK(std::string(asrb_status_string(ASRB_ERR_CACHE_MISS)).size() > 0);
  }

  TEST_CASE("normalize with defaults and a configured normalizer") {
    asrb_tokens* t = nullptr;
    REQUIRE(asrb_normalize(nullptr, "Speaker 1 00:00:03 Um, <unk> HELLO", &t) == ASRB_OK);
    CHECK(joined(t) == "um hello");
    CHECK(asrb_tokens_at(t, 9) == nullptr);
    asrb_tokens_destroy(t);

    asrb_normalizer* n = nullptr;
    REQUIRE(asrb_normalizer_create(&n) == ASRB_OK);
    REQUIRE(asrb_normalizer_set_flag(n, "strip_vendor_tags", 0) == ASRB_OK);
    REQUIRE(asrb_normalizer_add_digit_word(n, "1", "one") == ASRB_OK);
    CHECK(asrb_normalizer_set_flag(n, "shout", 1) == ASRB_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(asrb_last_error()) > 0);
    REQUIRE(asrb_normalize(n, "<unk> 1 woman", &t) == ASRB_OK);
    CHECK(joined(t) == "unk one woman");
    asrb_tokens_destroy(t);
    asrb_normalizer_destroy(n);
    asrb_normalizer_destroy(nullptr);
  }

  TEST_CASE("alignment and scores") {
    asrb_alignment* a = nullptr;
    REQUIRE(asrb_align_texts(nullptr, "please open the windows", "open a window", &a) == ASRB_OK);
    REQUIRE(asrb_alignment_size(a) == 4);
    std::string ops;
    for (size_t i = 0; i < 4; ++i) {
      char kind = 0;
      int64_t r = 0, h = 0;
      REQUIRE(asrb_alignment_op(a, i, &kind, &r, &h) == ASRB_OK);
      ops += kind;
      if (kind == 'D') CHECK(h == -1);
    }
    CHECK(ops == "DHSS");
    const asrb_counts c = asrb_alignment_counts(a);
    CHECK(c.hits == 1);
    CHECK(c.substitutions == 2);
    size_t begin = 0, end = 0;
    REQUIRE(asrb_alignment_project_span(a, 1, 3, &begin, &end) == ASRB_OK);
    CHECK(begin == 0);
    CHECK(end == 3);
    CHECK(asrb_alignment_project_span(a, 2, 9, &begin, &end) == ASRB_ERR_INVALID_ARGUMENT);
    asrb_alignment_destroy(a);

    asrb_score s{};
    REQUIRE(asrb_score_texts(nullptr, "please open the windows", "open a window", &s) == ASRB_OK);
    CHECK(s.mer == 0.75);
    CHECK(s.wer == 0.75);
    CHECK(asrb_score_texts(nullptr, "", "x", &s) == ASRB_ERR_UNDEFINED_METRIC);
    double v = 0;
    const asrb_counts zero{0, 0, 0, 0};
    CHECK(asrb_mer(&zero, &v) == ASRB_ERR_UNDEFINED_METRIC);
    CHECK(asrb_efficiency(0.25, 0.0, &v) == ASRB_ERR_INVALID_MEASUREMENT);
    REQUIRE(asrb_efficiency(0.25, 2.0, &v) == ASRB_OK);
    CHECK(v == doctest::Approx(0.375));
  }

  TEST_CASE("disfluency helpers") {
    size_t n = 0;
    REQUIRE(asrb_count_fillers(nullptr, "um so uh yes um", &n) == ASRB_OK);
    CHECK(n == 3);
    REQUIRE(asrb_count_repetitions(nullptr, "i i i went and uh and uh", &n) == ASRB_OK);
    CHECK(n == 3);
    double mer = -1;
    REQUIRE(asrb_score_revision(nullptr, "we went which uh who they left", "we went who they left", 2, 4, &mer) ==
            ASRB_OK);
    CHECK(mer == doctest::Approx(2.0 / 3.0));
    double rate = 0;
    CHECK(asrb_filler_detection_rate(0, 1, &rate) == ASRB_ERR_UNDEFINED_METRIC);
    CHECK(asrb_repetition_retention_rate(5, 4, &rate) == ASRB_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("statistics") {
    const double m[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2};
    asrb_test_result r{};
    REQUIRE(asrb_friedman(m, 4, 3, &r) == ASRB_OK);
    CHECK(r.has_effect_size == 1);
    CHECK(r.effect_size == doctest::Approx(1.0));
    const double x[] = {1, 2, 3, 4, 5, 5}, y[] = {2, 1, 4, 3, 6, 6};
    REQUIRE(asrb_spearman(x, y, 6, &r) == ASRB_OK);
    CHECK(r.statistic == doctest::Approx(0.8823529411764706));
    CHECK(asrb_paired_t(x, x, 6, &r) == ASRB_ERR_DEGENERATE_TEST);
    const double t[] = {10, 0, 0, 10};
    REQUIRE(asrb_chi_square(t, 2, 2, &r) == ASRB_OK);
    CHECK(r.statistic == doctest::Approx(20.0));
    CHECK(asrb_friedman(nullptr, 4, 3, &r) == ASRB_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("workflow options and commands") {
    asrb_options* o = nullptr;
    REQUIRE(asrb_options_create(&o) == ASRB_OK);
    CHECK(asrb_options_set(o, "nonsense", "1") == ASRB_ERR_INVALID_ARGUMENT);
    CHECK(asrb_options_set(o, "k", "-1") == ASRB_ERR_INVALID_ARGUMENT);
    asrb_run_summary sum{};
    CHECK(asrb_run_evaluate(o, &sum) == ASRB_ERR_CONFIG);

    const auto dir = std::filesystem::temp_directory_path() / ("asrbench-capi-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir / "ref");
    std::filesystem::create_directories(dir / "sys");
    std::ofstream(dir / "ref" / "A.txt") << "hello world";
    std::ofstream(dir / "sys" / "A.txt") << "hello word";
    std::ofstream(dir / "sys" / "B.txt") << "no reference";
    REQUIRE(asrb_options_set(o, "ref-dir", (dir / "ref").c_str()) == ASRB_OK);
    REQUIRE(asrb_options_set(o, "hyp-dir", (dir / "sys").c_str()) == ASRB_OK);
    REQUIRE(asrb_options_set(o, "out", (dir / "report.json").c_str()) == ASRB_OK);
    CHECK(asrb_run_evaluate(o, &sum) == ASRB_ERR_PARTIAL_FAILURE);
    CHECK(sum.produced == 1);
    CHECK(sum.failures == 1);
    CHECK(std::filesystem::exists(dir / "report.json"));
    asrb_options_destroy(o);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("wav padding by path") {
    const auto dir = std::filesystem::temp_directory_path() / ("asrbench-capi-wav-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    CHECK(asrb_pad_wav_file((dir / "none.wav").c_str(), (dir / "out.wav").c_str(), 2.0) == ASRB_ERR_IO);
    std::ofstream(dir / "bad.wav") << "RIFF1234WAVE";
    CHECK(asrb_pad_wav_file((dir / "bad.wav").c_str(), (dir / "out.wav").c_str(), 2.0) == ASRB_ERR_FORMAT);
    std::filesystem::remove_all(dir);
  }
}
