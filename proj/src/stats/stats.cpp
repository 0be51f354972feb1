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

#include "fractext/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/random.hpp"

namespace fractext::stats {
namespace {

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

void require_finite(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) throw DataError(fmt::format("{}: non-finite value", what));
  }
}

// Sum over tie groups of t^3 - t.
double tie_term(std::vector<double> pooled) {
  std::sort(pooled.begin(), pooled.end());
  double term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    term += t * t * t - t;
    i = j;
  }
  return term;
}

// Number of arrangements giving each U value, for sizes n and m.
std::vector<double> u_distribution(std::size_t n, std::size_t m) {
  // f[i][j][u]: arrangements of i x-values and j y-values with statistic u.
  std::vector<std::vector<std::vector<double>>> f(
      n + 1, std::vector<std::vector<double>>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      f[i][j].assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        f[i][j][0] = 1.0;
        continue;
      }
      // The largest value is either an x (beating all j y-values) or a y.
      for (std::size_t u = 0; u <= i * j; ++u) {
        double v = 0.0;
        if (u >= j && u - j <= (i - 1) * j) v += f[i - 1][j][u - j];
        if (u <= i * (j - 1)) v += f[i][j - 1][u];
        f[i][j][u] = v;
      }
    }
  }
  return f[n][m];
}

double ks_distance(std::vector<double> x) {
  const std::size_t n = x.size();
  const double mu = mean(x);
  const double sd = std::sqrt(variance(x, true));
  std::sort(x.begin(), x.end());
  const boost::math::normal_distribution<> norm;
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = boost::math::cdf(norm, (x[i] - mu) / sd);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

// Sorted null distribution of the Lilliefors statistic, cached per
// (n, reps, seed).
std::shared_ptr<const std::vector<double>> lilliefors_null(std::size_t n, int reps,
                                                           std::uint64_t seed) {
  using Key = std::tuple<std::size_t, int, std::uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
  const Key key{n, reps, seed};
  {
    std::lock_guard lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Rng rng(derive_seed(seed, "lilliefors", n));
  auto null = std::make_shared<std::vector<double>>();
  null->reserve(reps);
  std::vector<double> sample(n);
  for (int r = 0; r < reps; ++r) {
    for (auto& v : sample) v = rng.normal();
    null->push_back(ks_distance(sample));
  }
  std::sort(null->begin(), null->end());
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(null)).first->second;
}

}  // namespace

double mean(std::span<const double> x) {
  if (x.empty()) throw DataError("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x, bool sample) {
  if (x.size() < 2) throw DataError(fmt::format("variance needs n >= 2, got {}", x.size()));
  require_finite(x, "variance");
  const double mu = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(sample ? x.size() - 1 : x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) throw DataError("median of an empty sample");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

GroupSummary median_ci(std::span<const double> x, double level) {
  if (!(level > 0.0 && level < 1.0)) throw UsageError("confidence level must lie in (0, 1)");
  require_finite(x, "median_ci");
  const std::size_t n = x.size();
  if (n == 0) throw DataError("median_ci of an empty sample");
  const boost::math::binomial_distribution<> b(static_cast<double>(n), 0.5);
  // Coverage of [x_(k), x_(n-k+1)] is 1 - 2 P(B <= k-1).
  std::size_t best = 0;
  double coverage = 0.0;
  for (std::size_t k = 1; k <= (n + 1) / 2; ++k) {
    const double c = 1.0 - 2.0 * boost::math::cdf(b, static_cast<double>(k - 1));
    if (c >= level) {
      best = k;
      coverage = c;
    } else {
      break;
    }
  }
  if (best == 0) {
    throw DataError(fmt::format("n = {} is too small for a {:.0f}% median interval", n, level * 100));
  }
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  GroupSummary g;
  g.n = n;
  g.median = median(s);
  g.ci_low = s[best - 1];
  g.ci_high = s[n - best];
  g.coverage = coverage;
  return g;
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r[order[k]] = mid;
    i = j;
  }
  return r;
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw DataError("Mann-Whitney test needs two non-empty samples");
  require_finite(x, "mann_whitney_u");
  require_finite(y, "mann_whitney_u");
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  double u = 0.0;
  for (double a : x) {
    for (double b : y) u += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
  }
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const double ties = tie_term(pooled);

  TestResult r;
  r.statistic = u;
  r.n_per_group = {n, m};
  const double nm = static_cast<double>(n * m);
  if (n * m <= 400 && ties == 0.0) {
    r.method = "mann-whitney exact";
    const auto counts = u_distribution(n, m);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto ui = static_cast<std::size_t>(u);
    double lower = 0.0;
    for (std::size_t k = 0; k <= ui; ++k) lower += counts[k];
    double upper = 0.0;
    for (std::size_t k = ui; k < counts.size(); ++k) upper += counts[k];
    r.p_value = clamp_p(2.0 * std::min(lower, upper) / total);
    return r;
  }
  r.method = "mann-whitney normal";
  const double big_n = static_cast<double>(n + m);
  const double mu = nm / 2.0;
  const double var = nm / 12.0 * ((big_n + 1.0) - ties / (big_n * (big_n - 1.0)));
  if (!(var > 0.0)) {
    r.p_value = 1.0;
    r.flagged = true;
    return r;
  }
  const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
  const boost::math::normal_distribution<> norm;
  r.p_value = clamp_p(2.0 * boost::math::cdf(boost::math::complement(norm, z)));
  return r;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw DataError("Kruskal-Wallis test needs at least 2 groups");
  std::vector<double> pooled;
  TestResult r;
  r.method = "kruskal-wallis";
  for (const auto& g : groups) {
    if (g.size() < 2) throw DataError("Kruskal-Wallis test needs n >= 2 in every group");
    require_finite(g, "kruskal_wallis");
    pooled.insert(pooled.end(), g.begin(), g.end());
    r.n_per_group.push_back(g.size());
  }
  const auto rk = ranks(pooled);
  const double big_n = static_cast<double>(pooled.size());
  double sum = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rs += rk[offset + i];
    offset += g.size();
    sum += rs * rs / static_cast<double>(g.size());
  }
  double h = 12.0 / (big_n * (big_n + 1.0)) * sum - 3.0 * (big_n + 1.0);
  const double correction = 1.0 - tie_term(pooled) / (big_n * big_n * big_n - big_n);
  r.df = static_cast<double>(groups.size() - 1);
  if (correction <= 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.flagged = true;
    return r;
  }
  h = std::max(0.0, h / correction);
  r.statistic = h;
  const boost::math::chi_squared_distribution<> chi(r.df);
  r.p_value = clamp_p(boost::math::cdf(boost::math::complement(chi, h)));
  return r;
}

TestResult ks_normality(std::span<const double> x, std::uint64_t seed, int reps) {
  if (x.size() < 8) throw DataError(fmt::format("KS normality test needs n >= 8, got {}", x.size()));
  if (reps < 1) throw UsageError("Monte Carlo repetitions must be positive");
  require_finite(x, "ks_normality");
  if (variance(x) == 0.0) throw DataError("KS normality test of a constant sample");
  TestResult r;
  r.method = fmt::format("lilliefors monte-carlo ({} reps)", reps);
  r.n_per_group = {x.size()};
  r.statistic = ks_distance(std::vector<double>(x.begin(), x.end()));
  const auto null = lilliefors_null(x.size(), reps, seed);
  // Null values within rounding of the observed distance count as exceedances.
  const double tol = 1e-12;
  const auto first = std::lower_bound(null->begin(), null->end(), r.statistic - tol);
  const auto exceed = static_cast<double>(null->end() - first);
  r.p_value = clamp_p((exceed + 1.0) / (static_cast<double>(reps) + 1.0));
  return r;
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw DataError("ANOVA needs at least 2 groups");
  TestResult r;
  r.method = "one-way anova";
  double total = 0.0;
  std::size_t big_n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw DataError("ANOVA needs n >= 2 in every group");
    require_finite(g, "one_way_anova");
    total += std::accumulate(g.begin(), g.end(), 0.0);
    big_n += g.size();
    r.n_per_group.push_back(g.size());
  }
  const double grand = total / static_cast<double>(big_n);
  double ssb = 0.0;
  double ssw = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  if (ssw == 0.0) throw DataError("ANOVA with zero within-group variance");
  const double df1 = static_cast<double>(groups.size() - 1);
  const double df2 = static_cast<double>(big_n - groups.size());
  r.statistic = (ssb / df1) / (ssw / df2);
  r.df = df1;
  const boost::math::fisher_f_distribution<> f(df1, df2);
  r.p_value = clamp_p(boost::math::cdf(boost::math::complement(f, r.statistic)));
  return r;
}

TestResult paired_5x2cv_t(std::span<const double> scores_a, std::span<const double> scores_b) {
  if (scores_a.size() != 10 || scores_b.size() != 10) {
    throw DataError("5x2cv t test needs exactly 10 aligned scores per method");
  }
  require_finite(scores_a, "paired_5x2cv_t");
  require_finite(scores_b, "paired_5x2cv_t");
  TestResult r;
  r.method = "5x2cv paired t";
  r.n_per_group = {10, 10};
  r.df = 5.0;
  double s2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double d1 = scores_a[2 * i] - scores_b[2 * i];
    const double d2 = scores_a[2 * i + 1] - scores_b[2 * i + 1];
    const double m = 0.5 * (d1 + d2);
    s2 += (d1 - m) * (d1 - m) + (d2 - m) * (d2 - m);
  }
  const double denom = std::sqrt(s2 / 5.0);
  if (denom == 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.flagged = true;
    return r;
  }
  r.statistic = (scores_a[0] - scores_b[0]) / denom;
  const boost::math::students_t_distribution<> t(5.0);
  r.p_value = clamp_p(2.0 * boost::math::cdf(boost::math::complement(t, std::abs(r.statistic))));
  return r;
}

double balanced_accuracy(const Confusion& c) {
  const long row0 = c[0][0] + c[0][1];
  const long row1 = c[1][0] + c[1][1];
  if (row0 <= 0 || row1 <= 0) throw DataError("balanced accuracy needs both true classes present");
  return 0.5 * (static_cast<double>(c[0][0]) / row0 + static_cast<double>(c[1][1]) / row1);
}

Confusion confusion_matrix(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw DataError("label vectors differ in length");
  Confusion c{};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i] > 0 ? 0 : 1;
    const int p = predicted[i] > 0 ? 0 : 1;
    ++c[t][p];
  }
  return c;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DataError("spearman needs two equal-length samples with n >= 2");
  }
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::string stars(double p) {
  if (p <= 0.001) return "***";
  if (p <= 0.01) return "**";
  if (p <= 0.05) return "*";
  return "";
}

std::string superscript(double p) {
  if (p <= 0.001) return "3";
  if (p <= 0.01) return "2";
  if (p <= 0.05) return "1";
  return "";
}

}  // namespace fractext::stats
