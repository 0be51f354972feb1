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

// Synthetic signals with known scaling: fractional Gaussian noise and the
// binomial multiplicative cascade.

#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>
#include <fmt/format.h>

#include "fractext/error.hpp"
#include "fractext/fractal.hpp"
#include "fractext/random.hpp"

namespace fractext::fractal {
namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// In-place forward DFT (unnormalized, e^{-2 pi i jk/n}).
void forward_dft(std::vector<std::complex<double>>& data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

double fgn_autocovariance(double hurst, double lag) {
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(std::abs(lag + 1.0), e) - 2.0 * std::pow(std::abs(lag), e) +
                std::pow(std::abs(lag - 1.0), e));
}

}  // namespace

std::vector<double> generate_fgn(double hurst, std::size_t n, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw UsageError(fmt::format("Hurst exponent must lie in (0, 1), got {}", hurst));
  }
  if (n < 2 || (n & (n - 1)) != 0) {
    throw UsageError(fmt::format("fGn length must be a power of two, got {}", n));
  }
  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> eig(m);
  for (std::size_t k = 0; k <= n; ++k) {
    eig[k] = fgn_autocovariance(hurst, static_cast<double>(k));
  }
  for (std::size_t k = n + 1; k < m; ++k) eig[k] = eig[m - k];
  forward_dft(eig);

  Rng rng(seed);
  const double md = static_cast<double>(m);
  std::vector<std::complex<double>> w(m);
  auto weight = [&](std::size_t k) {
    // Eigenvalues are non-negative in exact arithmetic for 0 < H < 1.
    return std::sqrt(std::max(eig[k].real(), 0.0) / md);
  };
  w[0] = weight(0) * rng.normal();
  w[n] = weight(n) * rng.normal();
  for (std::size_t k = 1; k < n; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    const double scale = weight(k) / std::sqrt(2.0);
    w[k] = std::complex<double>(re * scale, im * scale);
    w[m - k] = std::conj(w[k]);
  }
  forward_dft(w);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i].real();
  return out;
}

std::vector<double> generate_binomial_cascade(double a, int levels,
                                              std::optional<std::uint64_t> seed) {
  if (!(a > 0.5 && a < 1.0)) {
    throw UsageError(fmt::format("cascade weight must lie in (0.5, 1), got {}", a));
  }
  if (levels < 10 || levels > 30) {
    throw UsageError(fmt::format("cascade levels must lie in [10, 30], got {}", levels));
  }
  std::optional<Rng> rng;
  if (seed) rng.emplace(*seed);
  std::vector<double> cells{1.0};
  for (int level = 0; level < levels; ++level) {
    std::vector<double> next;
    next.reserve(cells.size() * 2);
    for (double c : cells) {
      const bool heavy_left = !rng || rng->uniform() < 0.5;
      next.push_back(c * (heavy_left ? a : 1.0 - a));
      next.push_back(c * (heavy_left ? 1.0 - a : a));
    }
    cells = std::move(next);
  }
  return cells;
}

double cascade_hurst(double a, double q) {
  const double b = 1.0 - a;
  if (q == 0.0) {
    return -0.5 * (std::log2(a) + std::log2(b));
  }
  return 1.0 / q - std::log2(std::pow(a, q) + std::pow(b, q)) / q;
}

double cascade_alpha(double a, double q) {
  const double b = 1.0 - a;
  const double aq = std::pow(a, q);
  const double bq = std::pow(b, q);
  return -(aq * std::log(a) + bq * std::log(b)) / ((aq + bq) * std::log(2.0));
}

}  // namespace fractext::fractal
