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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <doctest.h>

#include "fractext/error.hpp"
#include "fractext/random.hpp"
#include "fractext/stats.hpp"

namespace st = fractext::stats;

namespace {

std::vector<double> normals(std::size_t n, fractext::Rng& rng, double shift = 0.0) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal() + shift;
  return x;
}

// Two-sided p of the U statistic by enumerating every split of the pooled
// ranks into groups of size n and m (no ties).
double enumerated_mwu_p(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::sort(pooled.begin(), pooled.end());
  const std::size_t n = x.size(), total = pooled.size();
  auto u_of = [&](const std::vector<bool>& in_x) {
    double u = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      if (!in_x[i]) continue;
      for (std::size_t j = 0; j < total; ++j) {
        if (!in_x[j] && i > j) u += 1.0;
      }
    }
    return u;
  };
  std::vector<bool> observed(total, false);
  for (double v : x) {
    observed[std::lower_bound(pooled.begin(), pooled.end(), v) - pooled.begin()] = true;
  }
  const double mu = 0.5 * n * (total - n);
  const double dev = std::abs(u_of(observed) - mu);
  std::vector<bool> pick(total, false);
  std::fill(pick.end() - n, pick.end(), true);
  double hits = 0.0, count = 0.0;
  do {
    count += 1.0;
    if (std::abs(u_of(pick) - mu) >= dev - 1e-9) hits += 1.0;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return hits / count;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("variance") {
    CHECK(st::variance(std::vector<double>(7, 4.5)) == 0.0);
    CHECK(st::variance(std::vector<double>{1.0, 3.0}) == 1.0);
    CHECK(st::variance(std::vector<double>{1.0, 3.0}, true) == 2.0);
    CHECK_THROWS_AS(st::variance(std::vector<double>{1.0}), fractext::DataError);
    fractext::Rng rng(4);
    const auto x = normals(5000, rng, 1e4);
    long double m = 0.0L;
    for (double v : x) m += v;
    m /= x.size();
    long double ss = 0.0L;
    for (double v : x) ss += (v - m) * (v - m);
    const double want = static_cast<double>(ss / x.size());
    CHECK(std::abs(st::variance(x) - want) <= 1e-12 * want);
  }

  TEST_CASE("median and its interval") {
    CHECK(st::median(std::vector<double>{3, 1, 2}) == 2.0);
    CHECK(st::median(std::vector<double>{4, 1, 2, 3}) == 2.5);
    const auto flat = st::median_ci(std::vector<double>(20, 1.5));
    CHECK(flat.median == 1.5);
    CHECK(flat.ci_low == 1.5);
    CHECK(flat.ci_high == 1.5);
    CHECK_THROWS_AS(st::median_ci(std::vector<double>{1, 2, 3, 4, 5}), fractext::DataError);
    fractext::Rng rng(12);
    const auto x = normals(1000, rng);
    const auto ci = st::median_ci(x);
    CHECK(ci.ci_low <= ci.median);
    CHECK(ci.median <= ci.ci_high);
    CHECK(std::abs(ci.median) < 0.1);
    CHECK(ci.coverage >= 0.95);
  }

  TEST_CASE("Mann-Whitney on disjoint samples") {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{6, 7, 8, 9, 10};
    const auto r = st::mann_whitney_u(x, y);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == doctest::Approx(2.0 / 252.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.00794).epsilon(1e-3));
    const auto s = st::mann_whitney_u(y, x);
    CHECK(s.p_value == doctest::Approx(r.p_value).epsilon(1e-12));
    CHECK(r.statistic + s.statistic == 25.0);
  }

  TEST_CASE("Mann-Whitney exact p matches enumeration") {
    fractext::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = normals(4 + trial % 3, rng, 0.3 * trial);
      const auto y = normals(6, rng);
      CHECK(st::mann_whitney_u(x, y).p_value ==
            doctest::Approx(enumerated_mwu_p(x, y)).epsilon(1e-9));
    }
  }

  TEST_CASE("Mann-Whitney on identical samples") {
    const std::vector<double> x{1, 2, 2, 3, 5, 8};
    CHECK(st::mann_whitney_u(x, x).p_value >= 0.99);
  }

  TEST_CASE("Kruskal-Wallis") {
    const std::vector<double> g{1, 2, 3, 4, 5, 6};
    CHECK(st::kruskal_wallis({g, g, g}).p_value >= 0.99);
    std::vector<std::vector<double>> disjoint(3);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 10; ++i) disjoint[k].push_back(100.0 * k + i);
    }
    CHECK(st::kruskal_wallis(disjoint).p_value < 0.001);
    fractext::Rng rng(17);
    const auto a = normals(40, rng), b = normals(40, rng, 0.4);
    CHECK(std::abs(st::kruskal_wallis({a, b}).p_value - st::mann_whitney_u(a, b).p_value) <
          0.01);
  }

  TEST_CASE("Lilliefors normality test") {
    fractext::Rng rng(23);
    int accepted = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      const auto x = normals(500, rng);
      if (st::ks_normality(x, 100 + t, 1000).p_value > 0.05) ++accepted;
    }
    CHECK(accepted >= 18);
    std::vector<double> expo(500);
    for (auto& v : expo) v = -std::log(1.0 - rng.uniform());
    CHECK(st::ks_normality(expo, 7, 1000).p_value < 0.01);
    CHECK_THROWS_AS(st::ks_normality(std::vector<double>(20, 1.0)), fractext::DataError);
    const auto x = normals(50, rng);
    CHECK(st::ks_normality(x, 9, 500).p_value == st::ks_normality(x, 9, 500).p_value);
  }

  TEST_CASE("one-way ANOVA") {
    const auto r = st::one_way_anova({{1, 2, 3}, {4, 5, 6}});
    CHECK(r.statistic == doctest::Approx(13.5).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.0213).epsilon(0.01));
    CHECK(st::one_way_anova({{1, 2, 4}, {1, 2, 4}}).statistic == doctest::Approx(0.0));
    fractext::Rng rng(29);
    int accepted = 0;
    for (int t = 0; t < 200; ++t) {
      if (st::one_way_anova({normals(30, rng), normals(30, rng), normals(30, rng)}).p_value >
          0.05) {
        ++accepted;
      }
    }
    CHECK(accepted >= 180);
  }

  TEST_CASE("5x2cv paired t test") {
    const std::vector<double> a{0.8, 0.7, 0.9, 0.6, 0.75, 0.8, 0.7, 0.85, 0.9, 0.65};
    const auto same = st::paired_5x2cv_t(a, a);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    // Dyadic scores keep every difference exactly 0.125.
    const std::vector<double> c{0.75, 0.5, 0.875, 0.625, 0.75, 0.5, 0.625, 0.875, 0.75, 0.5};
    std::vector<double> b(c);
    for (auto& v : b) v -= 0.125;
    const auto flat = st::paired_5x2cv_t(c, b);
    CHECK(flat.flagged);
    CHECK(flat.statistic == 0.0);
    CHECK(flat.p_value == 1.0);

    fractext::Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> x(10), y(10);
      for (int i = 0; i < 10; ++i) {
        x[i] = 0.7 + 0.1 * rng.normal();
        y[i] = 0.6 + 0.1 * rng.normal();
      }
      double denom = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double d1 = x[2 * i] - y[2 * i], d2 = x[2 * i + 1] - y[2 * i + 1];
        const double mean = 0.5 * (d1 + d2);
        denom += (d1 - mean) * (d1 - mean) + (d2 - mean) * (d2 - mean);
      }
      const double t = (x[0] - y[0]) / std::sqrt(denom / 5.0);
      const double p = 2.0 * boost::math::cdf(boost::math::complement(
                                 boost::math::students_t(5.0), std::abs(t)));
      const auto r = st::paired_5x2cv_t(x, y);
      CHECK(r.statistic == doctest::Approx(t).epsilon(1e-12));
      CHECK(r.p_value == doctest::Approx(p).epsilon(1e-9));
    }
    CHECK_THROWS_AS(st::paired_5x2cv_t(std::vector<double>(9), std::vector<double>(9)),
                    fractext::DataError);
  }

  TEST_CASE("balanced accuracy") {
    CHECK(st::balanced_accuracy({{{90, 10}, {30, 70}}}) == doctest::Approx(0.8));
    CHECK(st::balanced_accuracy({{{50, 0}, {0, 20}}}) == 1.0);
    const std::vector<int> truth{1, 1, 1, -1, -1};
    const std::vector<int> all_pos{1, 1, 1, 1, 1};
    CHECK(st::balanced_accuracy(st::confusion_matrix(truth, all_pos)) == 0.5);
    const auto c = st::confusion_matrix(truth, std::vector<int>{1, -1, 1, -1, 1});
    CHECK(c[0][0] == 2);
    CHECK(c[0][1] == 1);
    CHECK(c[1][0] == 1);
    CHECK(c[1][1] == 1);
  }

  TEST_CASE("ranks and Spearman") {
    const auto r = st::ranks(std::vector<double>{10, 20, 20, 5});
    CHECK(r == std::vector<double>{2.0, 3.5, 3.5, 1.0});
    const std::vector<double> x{1, 2, 3, 4, 5};
    CHECK(st::spearman(x, std::vector<double>{2, 4, 9, 16, 100}) == doctest::Approx(1.0));
    CHECK(st::spearman(x, std::vector<double>{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
  }

  TEST_CASE("significance markers") {
    CHECK(st::stars(0.0005) == "***");
    CHECK(st::stars(0.005) == "**");
    CHECK(st::stars(0.05) == "*");
    CHECK(st::stars(0.2).empty());
    CHECK(st::superscript(0.001) == "3");
    CHECK(st::superscript(0.01) == "2");
    CHECK(st::superscript(0.04) == "1");
    CHECK(st::superscript(0.06).empty());
  }
}
