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

#include "asrbench/stats.hpp"

#include "asrbench/corpus.hpp"

#include <map>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace asrbench;
using testing::code_of;

namespace {

// mer[backend][condition] in subject order.
using Columns = std::map<std::string, std::map<std::string, std::vector<double>>>;

Columns spontaneous_columns() {
  Columns cols;
  for (const auto& line : read_lines(testing::fixture_dir() / "spontaneous" / "records.jsonl")) {
    const auto j = nlohmann::json::parse(line);
    cols[j.at("backend_id").get<std::string>()][j.at("condition").get<std::string>()].push_back(
        j.at("mer").get<double>());
  }
  return cols;
}

const char* kBackends[] = {"assemblyai", "deepgram", "revai", "speechmatics", "whisper_replicate"};

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("mean and sample sd") {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(stats::mean(v) == 5.0);
    CHECK(stats::sample_sd(v) == doctest::Approx(std::sqrt(32.0 / 7.0)));
    const auto one = stats::mean_sd(std::vector<double>{3.0});
    CHECK(one.mean == 3.0);
    CHECK_FALSE(one.sd.has_value());
    CHECK(code_of([] { stats::mean_sd(std::vector<double>{}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { stats::sample_sd(std::vector<double>{1.0}); }) == ErrorCode::kInvalidArgument);
  }

  TEST_CASE("average ranks agree with the pairwise oracle") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> v(1 + trial % 9);
      for (auto& x : v) x = d(rng);
      const auto got = stats::average_ranks(v);
      const auto want = oracle::ranks(v);
      for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(got[i] == doctest::Approx(static_cast<double>(want[i])));
    }
  }

  TEST_CASE("paired t on the spontaneous set") {
    const Columns cols = spontaneous_columns();
    const std::pair<double, double> expected[] = {
        {3.8270430458901785, 0.0009816679918334644}, {4.172765726191963, 0.00042987630079540284},
        {4.833484444267847, 8.889222450020864e-05},  {4.189340340611624, 0.00041316845609483735},
        {3.962470786152784, 0.0007106481749650502},
    };
    for (std::size_t b = 0; b < 5; ++b) {
      CAPTURE(kBackends[b]);
      const auto& x = cols.at(kBackends[b]).at("omitted");
      const auto& y = cols.at(kBackends[b]).at("retained");
      REQUIRE(x.size() == 22);
      const auto r = stats::paired_t(x, y);
      CHECK(r.df == 21.0);
      CHECK(r.statistic == doctest::Approx(static_cast<double>(oracle::paired_t(x, y))).epsilon(1e-12));
      CHECK(r.statistic == doctest::Approx(expected[b].first).epsilon(1e-10));
      CHECK(r.p_value == doctest::Approx(expected[b].second).epsilon(1e-8));
      CHECK(r.p_value < 0.05);
    }
  }

  TEST_CASE("friedman on the spontaneous set") {
    const Columns cols = spontaneous_columns();
    std::vector<std::vector<double>> m(22);
    for (std::size_t i = 0; i < 22; ++i)
      for (const char* b : kBackends) m[i].push_back(cols.at(b).at("retained")[i]);
    const auto r = stats::friedman(m);
    CHECK(r.df == 4.0);
    CHECK(r.statistic == doctest::Approx(static_cast<double>(oracle::friedman_statistic(m))).epsilon(1e-12));
    CHECK(r.statistic == doctest::Approx(12.139534883720883).epsilon(1e-10));
    CHECK(r.p_value == doctest::Approx(0.01634325743244353).epsilon(1e-8));
    REQUIRE(r.effect_size);
    CHECK(*r.effect_size == doctest::Approx(r.statistic / (22.0 * 4.0)));
  }

  TEST_CASE("friedman effect size extremes") {
    // Every subject orders the treatments identically: W = 1.
    const auto agree = stats::friedman({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {0, 1, 2}});
    CHECK(*agree.effect_size == doctest::Approx(1.0));
    // Rank sums balance out exactly: W = 0.
    const auto none = stats::friedman({{1, 2, 3}, {3, 1, 2}, {2, 3, 1}});
    CHECK(*none.effect_size == doctest::Approx(0.0));
    CHECK(none.p_value == doctest::Approx(1.0));
  }

  TEST_CASE("friedman input checks") {
    CHECK(code_of([] { stats::friedman({{1, 2}}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { stats::friedman({{1}, {2}}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { stats::friedman({{1, 2}, {1}}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { stats::friedman({{1, 1}, {2, 2}}); }) == ErrorCode::kDegenerateTest);
  }

  TEST_CASE("paired t input checks") {
    const std::vector<double> a{1, 2, 3}, b{0, 1, 2}, c{1, 2};
    CHECK(code_of([&] { stats::paired_t(a, b); }) == ErrorCode::kDegenerateTest);
    CHECK(code_of([&] { stats::paired_t(a, c); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { stats::paired_t(c, c); }) == ErrorCode::kDegenerateTest);
    const std::vector<double> one{1.0};
    CHECK(code_of([&] { stats::paired_t(one, one); }) == ErrorCode::kInvalidArgument);
  }

  TEST_CASE("spearman") {
    const std::vector<double> x{1, 2, 3, 4, 5, 5}, y{2, 1, 4, 3, 6, 6};
    const auto r = stats::spearman(x, y);
    CHECK(r.statistic == doctest::Approx(0.8823529411764706).epsilon(1e-12));
    CHECK(r.statistic == doctest::Approx(static_cast<double>(oracle::spearman_rho(x, y))));
    CHECK(r.df == 4.0);
    CHECK(r.p_value == doctest::Approx(0.019947079177691843).epsilon(1e-8));
    const std::vector<double> k{3, 3, 3, 3};
    CHECK(code_of([&] { stats::spearman(k, x); }) == ErrorCode::kInvalidArgument);
    const std::vector<double> k4{3, 3, 3, 3}, z4{1, 2, 3, 4};
    CHECK(code_of([&] { stats::spearman(k4, z4); }) == ErrorCode::kDegenerateTest);
  }

  TEST_CASE("chi-square of homogeneity") {
    const auto r = stats::chi_square_counts({{10, 0}, {0, 10}});
    CHECK(r.statistic == doctest::Approx(20.0));
    CHECK(r.df == 1.0);
    CHECK(r.p_value == doctest::Approx(7.744216431044088e-06).epsilon(1e-8));
    const std::vector<std::vector<double>> t{{12, 7, 9}, {5, 11, 8}};
    CHECK(stats::chi_square_counts(t).statistic ==
          doctest::Approx(static_cast<double>(oracle::chi_square(t))).epsilon(1e-12));
    CHECK(stats::chi_square_counts(t).df == 2.0);
    CHECK(code_of([] { stats::chi_square_counts({{1, 2}}); }) == ErrorCode::kDegenerateTest);
    CHECK(code_of([] { stats::chi_square_counts({{0, 0}, {3, 4}}); }) == ErrorCode::kDegenerateTest);
    CHECK(code_of([] { stats::chi_square_counts({{1, -2}, {3, 4}}); }) == ErrorCode::kInvalidArgument);
  }

  TEST_CASE("distribution tails") {
    CHECK(stats::chi_square_upper_p(0.0, 3.0) == 1.0);
    CHECK(stats::chi_square_upper_p(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(stats::student_t_two_sided_p(0.0, 10.0) == doctest::Approx(1.0));
    CHECK(stats::student_t_two_sided_p(2.2281388519649385, 10.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(stats::regularized_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(stats::regularized_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(stats::regularized_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3));
    CHECK(code_of([] { stats::regularized_beta(0.0, 1.0, 0.5); }) == ErrorCode::kInvalidArgument);
  }
}
