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

#include <doctest.h>

#include "fractext/error.hpp"
#include "fractext/fractal.hpp"
#include "fractext/random.hpp"

namespace fr = fractext::fractal;

namespace {

std::vector<double> normal_series(std::size_t n, std::uint64_t seed) {
  fractext::Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal();
  return x;
}

// Mean squared residual of a least-squares polynomial fit, solved through
// the normal equations in long double on raw abscissae 1..s.
double oracle_residual(const std::vector<double>& y, std::size_t start, std::size_t s, int m) {
  const int k = m + 1;
  std::vector<long double> a(k * k, 0.0L), b(k, 0.0L);
  const long double scale = static_cast<long double>(s);
  for (std::size_t j = 0; j < s; ++j) {
    const long double t = static_cast<long double>(j + 1) / scale;
    std::vector<long double> pw(k, 1.0L);
    for (int p = 1; p < k; ++p) pw[p] = pw[p - 1] * t;
    for (int r = 0; r < k; ++r) {
      b[r] += pw[r] * y[start + j];
      for (int c = 0; c < k; ++c) a[r * k + c] += pw[r] * pw[c];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::fabs(a[r * k + col]) > std::fabs(a[piv * k + col])) piv = r;
    }
    for (int c = 0; c < k; ++c) std::swap(a[col * k + c], a[piv * k + c]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < k; ++r) {
      const long double f = a[r * k + col] / a[col * k + col];
      for (int c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> coef(k);
  for (int r = k - 1; r >= 0; --r) {
    long double acc = b[r];
    for (int c = r + 1; c < k; ++c) acc -= a[r * k + c] * coef[c];
    coef[r] = acc / a[r * k + r];
  }
  long double ss = 0.0L;
  for (std::size_t j = 0; j < s; ++j) {
    const long double t = static_cast<long double>(j + 1) / scale;
    long double fit = 0.0L, pw = 1.0L;
    for (int p = 0; p < k; ++p) {
      fit += coef[p] * pw;
      pw *= t;
    }
    const long double r = y[start + j] - fit;
    ss += r * r;
  }
  return static_cast<double>(ss / scale);
}

}  // namespace

TEST_SUITE("fractal") {
  TEST_CASE("profile of a short series") {
    const std::vector<double> x{1, 2, 3};
    const auto y = fr::profile(x);
    REQUIRE(y.size() == 3);
    CHECK(y[0] == -1.0);
    CHECK(y[1] == -1.0);
    CHECK(y[2] == 0.0);
  }

  TEST_CASE("profile of a constant series is zero") {
    const std::vector<double> x(100, 7.25);
    for (double v : fr::profile(x)) CHECK(v == 0.0);
  }

  TEST_CASE("profile matches a running-sum recomputation") {
    const auto x = normal_series(1000, 11);
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= x.size();
    const auto y = fr::profile(x);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += x[i] - mean;
      CHECK(std::abs(y[i] - static_cast<double>(acc)) <= 1e-10);
    }
  }

  TEST_CASE("profile is bit-identical under integer shifts of integer data") {
    fractext::Rng rng(5);
    std::vector<double> x(777), shifted(777);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = static_cast<double>(rng.below(40));
      shifted[i] = x[i] + 1000.0;
    }
    CHECK(fr::profile(x) == fr::profile(shifted));
  }

  TEST_CASE("linear profile leaves zero residual at order 1") {
    std::vector<double> y(256);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 * i + 2.0;
    for (std::size_t s : {16, 17, 50}) {
      for (double f : fr::fluctuations(y, s, 1, true)) CHECK(f == 0.0);
    }
  }

  TEST_CASE("quadratic profile leaves negligible residual at order 2") {
    std::vector<double> y(256);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double t = static_cast<double>(i);
      y[i] = 0.5 * t * t - 4.0 * t + 1.0;
    }
    for (std::size_t s : {16, 32, 64}) {
      for (double f : fr::fluctuations(y, s, 2, true)) CHECK(f <= 1e-18 * s);
    }
  }

  TEST_CASE("fluctuations agree with an independent regression") {
    const auto y = fr::profile(normal_series(1000, 21));
    for (int m : {1, 2, 3}) {
      for (std::size_t s : {16, 37, 100}) {
        const auto got = fr::fluctuations(y, s, m, true);
        const std::size_t nw = y.size() / s;
        REQUIRE(got.size() == 2 * nw);
        std::vector<double> want;
        for (std::size_t v = 0; v < nw; ++v) want.push_back(oracle_residual(y, v * s, s, m));
        for (std::size_t v = 0; v < nw; ++v) {
          want.push_back(oracle_residual(y, y.size() - (v + 1) * s, s, m));
        }
        auto g = got;
        std::sort(g.begin(), g.end());
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < g.size(); ++i) {
          CHECK(std::abs(g[i] - want[i]) <= 1e-10 * want[i]);
        }
      }
    }
  }

  TEST_CASE("one-sided windows tile from the start only") {
    const auto y = fr::profile(normal_series(100, 3));
    CHECK(fr::fluctuations(y, 16, 1, false).size() == 6);
    CHECK(fr::fluctuations(y, 16, 1, true).size() == 12);
  }

  TEST_CASE("fq of equal windows is the common value") {
    const std::vector<double> f2(10, 2.25);
    for (double q : {-5.0, -1.0, 0.0, 0.5, 2.0, 5.0}) {
      CHECK(fr::fq(f2, q) == doctest::Approx(1.5).epsilon(1e-14));
    }
  }

  TEST_CASE("fq at q = 2 is the root mean square and q = 0 is continuous") {
    const std::vector<double> f2{0.5, 1.0, 4.0, 9.0, 0.25};
    const double rms = std::sqrt((0.5 + 1.0 + 4.0 + 9.0 + 0.25) / 5.0);
    CHECK(fr::fq(f2, 2.0) == doctest::Approx(rms).epsilon(1e-14));
    double log_mean = 0.0;
    for (double v : f2) log_mean += std::log(v);
    CHECK(fr::fq(f2, 0.0) == doctest::Approx(std::exp(0.5 * log_mean / 5.0)).epsilon(1e-14));
    const double f0 = fr::fq(f2, 0.0);
    const double lo = std::min(fr::fq(f2, -0.01), fr::fq(f2, 0.01));
    const double hi = std::max(fr::fq(f2, -0.01), fr::fq(f2, 0.01));
    CHECK(lo <= f0);
    CHECK(f0 <= hi);
    CHECK((hi - lo) / f0 < 0.005);
  }

  TEST_CASE("fq skips zero windows") {
    CHECK(fr::fq(std::vector<double>{0.0, 4.0, 4.0}, -3.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(fr::fq(std::vector<double>{0.0, 0.0}, 2.0), fractext::NumericalError);
  }

  TEST_CASE("exact power-law surface gives the exponent with unit fit") {
    fr::FluctuationSurface surface;
    surface.q = fr::make_q_grid();
    surface.scales = fr::log_scales(65536, 20, 16, 0.25);
    surface.windows_per_scale.assign(surface.scales.size(), 1);
    for (std::size_t qi = 0; qi < surface.q.size(); ++qi) {
      for (std::size_t s : surface.scales) surface.values.push_back(std::pow(double(s), 0.7));
    }
    const auto h = fr::hurst_spectrum(surface);
    for (std::size_t i = 0; i < h.q.size(); ++i) {
      CHECK(h.h[i] == doctest::Approx(0.7).epsilon(1e-12));
      CHECK(h.r2[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("monofractal exponents collapse the spectrum") {
    fr::GeneralizedHurst h;
    h.q = fr::make_q_grid();
    h.h.assign(h.q.size(), 0.6);
    h.r2.assign(h.q.size(), 1.0);
    const auto spec = fr::singularity_spectrum(h);
    for (std::size_t i = 0; i < spec.q.size(); ++i) {
      CHECK(spec.alpha[i] == doctest::Approx(0.6));
      CHECK(spec.f_alpha[i] == doctest::Approx(1.0));
    }
    const auto sum = fr::summarize(spec, h);
    CHECK(sum.degenerate);
    CHECK(sum.asymmetry == 0.0);
  }

  TEST_CASE("symmetric spectrum has zero asymmetry") {
    fr::GeneralizedHurst h;
    h.q = fr::make_q_grid(-2.0, 2.0, 1.0);
    h.h = {0.0, 0.0, 0.0, 0.0, 0.0};
    h.r2.assign(5, 1.0);
    fr::SingularitySpectrum spec;
    spec.q = h.q;
    spec.alpha = {0.2, 0.4, 0.5, 0.6, 0.8};
    spec.f_alpha.assign(5, 1.0);
    spec.alpha0 = 0.5;
    const auto sum = fr::summarize(spec, h);
    CHECK(sum.dimension == doctest::Approx(0.6));
    CHECK(sum.asymmetry == doctest::Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("spectrum identities on noise") {
    const auto r = fr::mfdfa(normal_series(4096, 8));
    const auto& q = r.spectrum.q;
    const auto zero = std::find(q.begin(), q.end(), 0.0) - q.begin();
    CHECK(r.spectrum.f_alpha[zero] == 1.0);
    CHECK(r.summary.dimension == r.summary.delta_left + r.summary.delta_right);
    CHECK(r.summary.asymmetry >= -1.0);
    CHECK(r.summary.asymmetry <= 1.0);
  }

  TEST_CASE("white noise has H near one half") {
    const auto x = normal_series(1 << 16, 99);
    const double h = fr::dfa(x);
    CHECK(h >= 0.45);
    CHECK(h <= 0.55);
  }

  TEST_CASE("constant series is rejected as degenerate") {
    const std::vector<double> x(1000, 3.0);
    CHECK_THROWS_AS(fr::mfdfa(x), fractext::NumericalError);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(fr::mfdfa(std::vector<double>(10, 1.0)), fractext::DataError);
    auto x = normal_series(500, 1);
    x[3] = std::nan("");
    CHECK_THROWS_AS(fr::mfdfa(x), fractext::DataError);
    CHECK_THROWS_AS(fr::make_q_grid(1.0, -1.0, 0.5), fractext::UsageError);
    auto config = fr::MfdfaConfig::defaults();
    config.scales = {16, 32, 64};
    CHECK_THROWS_AS(fr::mfdfa(normal_series(1000, 2), config), fractext::DataError);
  }

  TEST_CASE("q grid lands exactly on 0 and 2") {
    const auto q = fr::make_q_grid();
    CHECK(q.size() == 41);
    CHECK(std::count(q.begin(), q.end(), 0.0) == 1);
    CHECK(std::count(q.begin(), q.end(), 2.0) == 1);
  }

  TEST_CASE("log scales are distinct, increasing and bounded") {
    const auto s = fr::log_scales(10000, 20, 16, 0.25);
    CHECK(s.front() == 16);
    CHECK(s.back() == 2500);
    CHECK(std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end());
  }

  TEST_CASE("fGn autocorrelation follows the generator's covariance") {
    for (double hurst : {0.5, 0.7}) {
      const auto x = fr::generate_fgn(hurst, 1 << 16, 7);
      const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
      double c0 = 0.0, c1 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        c0 += (x[i] - m) * (x[i] - m);
        if (i + 1 < x.size()) c1 += (x[i] - m) * (x[i + 1] - m);
      }
      const double r1 = c1 / c0;
      const double expected = std::pow(2.0, 2.0 * hurst - 1.0) - 1.0;
      CHECK(std::abs(r1 - expected) < 0.02);
    }
  }

  TEST_CASE("fGn with H = 0.9 is recovered") {
    const double h = fr::dfa(fr::generate_fgn(0.9, 1 << 16, 3));
    CHECK(h >= 0.85);
    CHECK(h <= 0.95);
  }

  TEST_CASE("fGn is reproducible from its seed") {
    CHECK(fr::generate_fgn(0.3, 1024, 5) == fr::generate_fgn(0.3, 1024, 5));
    CHECK(fr::generate_fgn(0.3, 1024, 5) != fr::generate_fgn(0.3, 1024, 6));
    CHECK_THROWS_AS(fr::generate_fgn(1.0, 1024, 5), fractext::UsageError);
    CHECK_THROWS_AS(fr::generate_fgn(0.5, 1000, 5), fractext::UsageError);
  }

  TEST_CASE("cascade closed form") {
    CHECK(fr::cascade_hurst(0.75, 2.0) ==
          doctest::Approx(0.5 - std::log2(0.625) / 2.0));
    const double eps = 1e-6;
    CHECK(fr::cascade_hurst(0.75, 0.0) ==
          doctest::Approx(0.5 * (fr::cascade_hurst(0.75, eps) + fr::cascade_hurst(0.75, -eps)))
              .epsilon(1e-6));
    // alpha(q) tends to -log2(a) and -log2(1 - a) at the extremes.
    CHECK(fr::cascade_alpha(0.75, 200.0) == doctest::Approx(-std::log2(0.75)).epsilon(1e-3));
    CHECK(fr::cascade_alpha(0.75, -200.0) == doctest::Approx(2.0).epsilon(1e-3));
  }

  TEST_CASE("cascade conserves mass and recovers its exponents") {
    const auto x = fr::generate_binomial_cascade(0.75, 16, 42);
    CHECK(x.size() == 65536);
    const auto r = fr::mfdfa(x);
    for (double q : {-5.0, -2.0, 2.0, 5.0}) {
      CHECK(std::abs(r.hurst.at(q) - fr::cascade_hurst(0.75, q)) <= 0.10);
    }
    // The q range truncates the spectrum; alpha at q = -5 and 5 is the target.
    CHECK(std::abs(r.summary.alpha_min - fr::cascade_alpha(0.75, 5.0)) <= 0.1);
    CHECK(std::abs(r.summary.alpha_max - fr::cascade_alpha(0.75, -5.0)) <= 0.1);
    const auto det = fr::generate_binomial_cascade(0.6, 10);
    CHECK(std::accumulate(det.begin(), det.end(), 0.0) == doctest::Approx(1.0));
  }
}
