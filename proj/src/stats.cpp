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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "asrbench/error.hpp"

namespace asrbench::stats {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  fail(ErrorCode::kInternal, "incomplete beta continued fraction did not converge");
}

double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  fail(ErrorCode::kInternal, "incomplete gamma series did not converge");
}

double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  fail(ErrorCode::kInternal, "incomplete gamma continued fraction did not converge");
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      fail(ErrorCode::kInvalidArgument, std::string(what) + " contains a non-finite value");
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    fail(ErrorCode::kDegenerateTest, "correlation is undefined for a constant input");
  return std::max(-1.0, std::min(1.0, sxy / std::sqrt(sxx * syy)));
}

}  // namespace

double mean(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::kInvalidArgument, "mean of an empty group");
  // Kahan summation keeps grouped means stable regardless of record order.
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2)
    fail(ErrorCode::kInvalidArgument, "sample standard deviation needs at least two values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

MeanSd mean_sd(std::span<const double> values) {
  MeanSd out;
  out.n = values.size();
  out.mean = mean(values);
  if (values.size() >= 2) out.sd = sample_sd(values);
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::kInvalidArgument, "beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return clamp01(front * beta_cf(a, b, x) / a);
  return clamp01(1.0 - front * beta_cf(b, a, 1.0 - x) / b);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) fail(ErrorCode::kInvalidArgument, "gamma shape must be positive");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return clamp01(1.0 - gamma_p_series(a, x));
  return clamp01(gamma_q_cf(a, x));
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) fail(ErrorCode::kInvalidArgument, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return regularized_beta(df / 2.0, 0.5, df / (df + t * t));
}

double chi_square_upper_p(double x, double df) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, x / 2.0);
}

TestResult friedman(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "friedman needs at least two subjects");
  const std::size_t k = matrix.front().size();
  if (k < 2) fail(ErrorCode::kInvalidArgument, "friedman needs at least two treatments");

  std::vector<double> rank_sums(k, 0.0);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = matrix[i];
    if (row.size() != k)
      fail(ErrorCode::kInvalidArgument, "friedman: subject " + std::to_string(i) + " has a missing cell");
    for (double v : row)
      if (!std::isfinite(v))
        fail(ErrorCode::kInvalidArgument, "friedman: subject " + std::to_string(i) + " has a missing cell");
    const auto ranks = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) rank_sums[j] += ranks[j];

    std::vector<double> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < k;) {
      std::size_t b = a + 1;
      while (b < k && sorted[b] == sorted[a]) ++b;
      const double t = static_cast<double>(b - a);
      tie_term += t * t * t - t;
      a = b;
    }
  }

  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  const double expected = nn * (kk + 1.0) / 2.0;
  double ss = 0.0;
  for (double r : rank_sums) ss += (r - expected) * (r - expected);
  const double denom = nn * kk * (kk + 1.0) - tie_term / (kk - 1.0);
  if (denom <= 0.0)
    fail(ErrorCode::kDegenerateTest, "friedman: every subject ties all treatments");

  TestResult out;
  out.statistic = 12.0 * ss / denom;
  out.df = kk - 1.0;
  out.p_value = chi_square_upper_p(out.statistic, out.df);
  out.effect_size = clamp01(out.statistic / (nn * (kk - 1.0)));
  return out;
}

TestResult paired_t(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::kInvalidArgument, "paired_t: length mismatch");
  if (x.size() < 2) fail(ErrorCode::kInvalidArgument, "paired_t needs at least two pairs");
  require_finite(x, "paired_t x");
  require_finite(y, "paired_t y");

  std::vector<double> d(x.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d[i] = x[i] - y[i];
    scale = std::max({scale, std::fabs(x[i]), std::fabs(y[i])});
  }
  const double md = mean(d);
  const double sd = sample_sd(d);
  // A constant shift leaves only rounding noise in the differences.
  if (sd == 0.0 || sd <= 1e-12 * scale)
    fail(ErrorCode::kDegenerateTest, "paired_t: differences have zero variance");

  const double n = static_cast<double>(d.size());
  TestResult out;
  out.statistic = md / (sd / std::sqrt(n));
  out.df = n - 1.0;
  out.p_value = student_t_two_sided_p(out.statistic, out.df);
  return out;
}

TestResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::kInvalidArgument, "spearman: length mismatch");
  if (x.size() < 3) fail(ErrorCode::kInvalidArgument, "spearman needs at least three pairs");
  require_finite(x, "spearman x");
  require_finite(y, "spearman y");

  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double rho = pearson(rx, ry);
  const double n = static_cast<double>(x.size());

  TestResult out;
  out.statistic = rho;
  out.df = n - 2.0;
  if (std::fabs(rho) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double t = rho * std::sqrt((n - 2.0) / (1.0 - rho * rho));
    out.p_value = student_t_two_sided_p(t, n - 2.0);
  }
  return out;
}

TestResult chi_square_counts(const std::vector<std::vector<double>>& observed) {
  const std::size_t rows = observed.size();
  if (rows < 2) fail(ErrorCode::kDegenerateTest, "chi-square needs at least two rows");
  const std::size_t cols = observed.front().size();
  if (cols < 2) fail(ErrorCode::kDegenerateTest, "chi-square needs at least two columns");

  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (observed[i].size() != cols) fail(ErrorCode::kInvalidArgument, "chi-square: ragged table");
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = observed[i][j];
      if (!std::isfinite(v) || v < 0.0)
        fail(ErrorCode::kInvalidArgument, "chi-square: counts must be finite and non-negative");
      row_sum[i] += v;
      col_sum[j] += v;
      total += v;
    }
  }
  for (double s : row_sum)
    if (s == 0.0) fail(ErrorCode::kDegenerateTest, "chi-square: a row total is zero");
  for (double s : col_sum)
    if (s == 0.0) fail(ErrorCode::kDegenerateTest, "chi-square: a column total is zero");

  double chi2 = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double e = row_sum[i] * col_sum[j] / total;
      if (e < 1.0)
        fail(ErrorCode::kInvalidArgument, "chi-square: expected count below 1 in cell (" +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
      const double diff = observed[i][j] - e;
      chi2 += diff * diff / e;
    }
  }
  TestResult out;
  out.statistic = chi2;
  out.df = static_cast<double>((rows - 1) * (cols - 1));
  out.p_value = chi_square_upper_p(chi2, out.df);
  return out;
}

}  // namespace asrbench::stats
