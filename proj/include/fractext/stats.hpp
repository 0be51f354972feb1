// Copyright 2026 The fractext Authors.
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

// Summary statistics and hypothesis tests.

#ifndef FRACTEXT_STATS_HPP_
#define FRACTEXT_STATS_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace fractext::stats {

double mean(std::span<const double> x);
// Population variance (1/n) by default; `sample` selects 1/(n-1). n >= 2.
double variance(std::span<const double> x, bool sample = false);
double median(std::span<const double> x);

struct GroupSummary {
  std::size_t n = 0;
  double median = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  // Actual coverage of the order-statistic interval, >= the requested level.
  double coverage = 0.0;
};

// Distribution-free interval [x_(k), x_(n-k+1)] for the median, with the
// largest k whose binomial coverage reaches `level`.
GroupSummary median_ci(std::span<const double> x, double level = 0.95);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  std::vector<std::size_t> n_per_group;
  double df = std::numeric_limits<double>::quiet_NaN();
  // Set when a degenerate input forced the neutral result.
  bool flagged = false;
};

// Two-sided. statistic = U of the first sample (pairs with x > y, ties count
// one half). Exact null distribution when n*m <= 400 and there are no ties;
// otherwise the normal approximation with tie and continuity corrections.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

// H with tie correction against chi-square with k-1 degrees of freedom.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

inline constexpr std::uint64_t kDefaultMonteCarloSeed = 0x5EEDF00DULL;
inline constexpr int kDefaultMonteCarloReps = 10000;

// Kolmogorov-Smirnov distance to the normal with the sample's mean and SD;
// Lilliefors p-value by Monte Carlo, (exceedances + 1) / (reps + 1).
TestResult ks_normality(std::span<const double> x, std::uint64_t seed = kDefaultMonteCarloSeed,
                        int reps = kDefaultMonteCarloReps);

TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

// Dietterich's 5x2cv paired t test. Scores are ordered repetition-major:
// index 2*i + j is fold j of repetition i.
TestResult paired_5x2cv_t(std::span<const double> scores_a, std::span<const double> scores_b);

// Rows are the true class, columns the predicted class.
using Confusion = std::array<std::array<long, 2>, 2>;
double balanced_accuracy(const Confusion& confusion);
// Labels are +1 / -1; +1 is class 0 of the confusion matrix.
Confusion confusion_matrix(std::span<const int> truth, std::span<const int> predicted);

double spearman(std::span<const double> x, std::span<const double> y);

// Mid-ranks (1-based) of x.
std::vector<double> ranks(std::span<const double> x);

// "***", "**", "*" or "" for p <= 0.001, 0.01, 0.05.
std::string stars(double p);
// "3", "2", "1" or "" for the same thresholds.
std::string superscript(double p);

}  // namespace fractext::stats

#endif  // FRACTEXT_STATS_HPP_
