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

#include <optional>
#include <span>
#include <vector>

namespace asrbench::stats {

struct TestResult {
  double statistic = 0.0;
  double df = 0.0;
  std::optional<double> df2;  // second degree of freedom when applicable
  double p_value = 1.0;
  std::optional<double> effect_size;  // Kendall's W for friedman
};

struct MeanSd {
  double mean = 0.0;
  std::optional<double> sd;  // sample sd, needs n >= 2
  std::size_t n = 0;
};

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); throws for n < 2.
double sample_sd(std::span<const double> values);
/// Mean always, sd when n >= 2. Throws kInvalidArgument for an empty input.
MeanSd mean_sd(std::span<const double> values);

/// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Friedman rank test over a subjects x treatments matrix (row-major, one
/// row per subject). Ties within a row get average ranks and the statistic
/// carries the usual tie correction. effect_size is Kendall's
/// W = chi2 / (n (k - 1)).
TestResult friedman(const std::vector<std::vector<double>>& matrix);

/// Paired two-sided t-test of x - y. Throws kDegenerateTest when the
/// differences have zero variance.
TestResult paired_t(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation with a t-approximation p-value (df = n - 2).
TestResult spearman(std::span<const double> x, std::span<const double> y);

/// Pearson chi-square test of homogeneity on a rows x cols count table.
TestResult chi_square_counts(const std::vector<std::vector<double>>& observed);

// Distribution functions, evaluated with continued fractions / series to
// roughly 1e-12 relative accuracy.
double regularized_beta(double a, double b, double x);
double regularized_gamma_q(double a, double x);  // upper, Q(a, x)
double student_t_two_sided_p(double t, double df);
double chi_square_upper_p(double x, double df);

}  // namespace asrbench::stats
