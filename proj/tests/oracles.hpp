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

// Slow, independent reference implementations used to check the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oracle {

// Prefix recursion with memoization; shares nothing with the suffix DP.
inline std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> memo((a.size() + 1) * (b.size() + 1), kUnset);
  std::function<std::size_t(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    std::size_t& slot = memo[i * (b.size() + 1) + j];
    if (slot != kUnset) return slot;
    slot = std::min({d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return slot;
  };
  return d(a.size(), b.size());
}

// Rank = 1 + #smaller + (#equal - 1) / 2, counted pairwise.
inline std::vector<long double> ranks(const std::vector<double>& v) {
  std::vector<long double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (double x : v) {
      if (x < v[i]) ++less;
      if (x == v[i]) ++equal;
    }
    r[i] = 1.0L + less + (equal - 1) / 2.0L;
  }
  return r;
}

inline long double mean(const std::vector<long double>& v) {
  long double s = 0;
  for (auto x : v) s += x;
  return s / v.size();
}

inline long double pearson(const std::vector<long double>& x, const std::vector<long double>& y) {
  const long double mx = mean(x), my = mean(y);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline long double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

// Friedman chi-square from rank sums, divided by the tie correction.
inline long double friedman_statistic(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size(), k = m[0].size();
  std::vector<long double> rank_sum(k, 0);
  long double tie_terms = 0;
  for (const auto& row : m) {
    const auto r = ranks(row);
    for (std::size_t j = 0; j < k; ++j) rank_sum[j] += r[j];
    std::map<double, int> counts;
    for (double x : row) ++counts[x];
    for (const auto& [value, t] : counts) tie_terms += static_cast<long double>(t) * t * t - t;
  }
  long double sum_sq = 0;
  for (auto s : rank_sum) sum_sq += s * s;
  const long double q = 12.0L / (n * k * (k + 1)) * sum_sq - 3.0L * n * (k + 1);
  return q / (1.0L - tie_terms / (static_cast<long double>(n) * k * (k * k - 1)));
}

inline long double paired_t(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<long double> d;
  for (std::size_t i = 0; i < x.size(); ++i) d.push_back(static_cast<long double>(x[i]) - y[i]);
  const long double md = mean(d);
  long double ss = 0;
  for (auto v : d) ss += (v - md) * (v - md);
  const long double sd = std::sqrt(ss / (d.size() - 1));
  return md / (sd / std::sqrt(static_cast<long double>(d.size())));
}

inline long double chi_square(const std::vector<std::vector<double>>& t) {
  std::vector<long double> rows(t.size(), 0), cols(t[0].size(), 0);
  long double total = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[0].size(); ++j) {
      rows[i] += t[i][j];
      cols[j] += t[i][j];
      total += t[i][j];
    }
  long double x = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[0].size(); ++j) {
      const long double e = rows[i] * cols[j] / total;
      x += (t[i][j] - e) * (t[i][j] - e) / e;
    }
  return x;
}

}  // namespace oracle
