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

#include "fractext/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "fractext/error.hpp"

namespace fractext::fractal {
namespace {

// Orthonormal basis of polynomials up to `order` sampled on 0..s-1.
Eigen::MatrixXd polynomial_basis(std::size_t s, int order) {
  const auto rows = static_cast<Eigen::Index>(s);
  Eigen::MatrixXd vandermonde(rows, order + 1);
  const double half = 0.5 * static_cast<double>(s - 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    // Abscissae mapped into [-1, 1] keep the Vandermonde well conditioned.
    const double t = half > 0 ? (static_cast<double>(i) - half) / half : 0.0;
    double p = 1.0;
    for (int k = 0; k <= order; ++k) {
      vandermonde(i, k) = p;
      p *= t;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, order + 1);
}

// Mean squared residual after a least-squares line, in centred form so that
// exactly linear data leaves exactly zero residual.
double linear_residual(const double* y, std::size_t s) {
  const double half = 0.5 * static_cast<double>(s - 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < s; ++j) sum += y[j];
  const double mean = sum / static_cast<double>(s);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    const double xc = static_cast<double>(j) - half;
    sxx += xc * xc;
    sxy += xc * (y[j] - mean);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    const double r = y[j] - mean - slope * (static_cast<double>(j) - half);
    ss += r * r;
  }
  return ss / static_cast<double>(s);
}

double basis_residual(const double* y, std::size_t s, const Eigen::MatrixXd& q) {
  Eigen::Map<const Eigen::VectorXd> window(y, static_cast<Eigen::Index>(s));
  const Eigen::VectorXd coeff = q.transpose() * window;
  const Eigen::VectorXd residual = window - q * coeff;
  return residual.squaredNorm() / static_cast<double>(s);
}

double slope_of(std::span<const double> x, std::span<const double> y,
                double* r2) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  if (r2 != nullptr) {
    *r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  }
  return slope;
}

}  // namespace

MfdfaConfig MfdfaConfig::defaults() {
  MfdfaConfig config;
  config.q_grid = make_q_grid();
  return config;
}

std::vector<double> make_q_grid(double q_min, double q_max, double step) {
  if (!(step > 0.0) || q_max < q_min) {
    throw UsageError(fmt::format("invalid q grid [{}, {}] step {}", q_min, q_max, step));
  }
  const auto count = static_cast<std::size_t>(std::floor((q_max - q_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = q_min + static_cast<double>(i) * step;
  }
  return grid;
}

std::vector<std::size_t> log_scales(std::size_t n, std::size_t count,
                                    std::size_t s_min, double s_max_fraction) {
  const auto s_max = static_cast<std::size_t>(std::floor(static_cast<double>(n) * s_max_fraction));
  if (s_max < s_min) {
    throw DataError(fmt::format(
        "series of length {} too short for scales starting at {}", n, s_min));
  }
  std::vector<std::size_t> scales;
  if (count < 2 || s_max == s_min) {
    scales.push_back(s_min);
    return scales;
  }
  const double lo = std::log(static_cast<double>(s_min));
  const double hi = std::log(static_cast<double>(s_max));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const auto s = static_cast<std::size_t>(std::llround(std::exp(lo + t * (hi - lo))));
    if (scales.empty() || s != scales.back()) scales.push_back(s);
  }
  return scales;
}

void validate_series(std::span<const double> x, std::size_t min_length) {
  if (x.size() < min_length) {
    throw DataError(fmt::format("series too short: {} values, need at least {}",
                                x.size(), min_length));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw DataError(fmt::format("non-finite value at index {}", i));
    }
  }
}

std::vector<double> profile(std::span<const double> x) {
  validate_series(x, 0);
  const std::size_t n = x.size();
  // Extended precision keeps the prefix sums and n * C_i exact for integer
  // and coarse dyadic data well beyond the 53-bit double range.
  std::vector<long double> prefix(n);
  long double running = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    running += x[i];
    prefix[i] = running;
  }
  std::vector<double> y(n);
  const long double nd = static_cast<long double>(n);
  const long double total = n > 0 ? prefix[n - 1] : 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double count = static_cast<long double>(i + 1);
    y[i] = static_cast<double>((nd * prefix[i] - count * total) / nd);
  }
  return y;
}

std::vector<double> fluctuations(std::span<const double> y, std::size_t s,
                                 int detrend_order, bool two_sided) {
  if (detrend_order < 1) {
    throw UsageError(fmt::format("detrend order must be >= 1, got {}", detrend_order));
  }
  if (s < static_cast<std::size_t>(detrend_order) + 2 || s > y.size()) {
    throw DataError(fmt::format("invalid scale {} for order {} and profile length {}",
                                s, detrend_order, y.size()));
  }
  const std::size_t windows = y.size() / s;
  std::vector<double> f2;
  f2.reserve(two_sided ? 2 * windows : windows);

  Eigen::MatrixXd basis;
  if (detrend_order > 1) basis = polynomial_basis(s, detrend_order);
  auto residual = [&](const double* w) {
    return detrend_order == 1 ? linear_residual(w, s) : basis_residual(w, s, basis);
  };

  for (std::size_t v = 0; v < windows; ++v) {
    f2.push_back(residual(y.data() + v * s));
  }
  if (two_sided) {
    for (std::size_t v = 0; v < windows; ++v) {
      f2.push_back(residual(y.data() + (y.size() - (v + 1) * s)));
    }
  }
  return f2;
}

double fq(std::span<const double> f2, double q) {
  std::vector<double> logs;
  logs.reserve(f2.size());
  double sum = 0.0;
  for (double v : f2) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw DataError("fluctuation values must be finite and non-negative");
    }
    if (v > 0.0) {
      logs.push_back(std::log(v));
      sum += v;
    }
  }
  if (logs.empty()) {
    throw NumericalError("degenerate series: every window has zero fluctuation");
  }
  const double count = static_cast<double>(logs.size());
  if (q == 0.0) {
    return std::exp(0.5 * std::accumulate(logs.begin(), logs.end(), 0.0) / count);
  }
  if (q == 2.0) {
    return std::sqrt(sum / count);
  }
  // log-sum-exp keeps large |q| from overflowing.
  const double half_q = 0.5 * q;
  double peak = -std::numeric_limits<double>::infinity();
  for (double l : logs) peak = std::max(peak, half_q * l);
  double acc = 0.0;
  for (double l : logs) acc += std::exp(half_q * l - peak);
  const double log_mean = peak + std::log(acc / count);
  return std::exp(log_mean / q);
}

FluctuationSurface fluctuation_surface(std::span<const double> x,
                                       const MfdfaConfig& config) {
  validate_series(x);
  if (config.q_grid.empty()) throw UsageError("empty q grid");
  FluctuationSurface surface;
  surface.q = config.q_grid;
  surface.scales = config.scales.empty()
                       ? log_scales(x.size(), config.scale_count, config.s_min,
                                    config.s_max_fraction)
                       : config.scales;
  const auto y = profile(x);
  const std::size_t nq = surface.q.size();
  const std::size_t ns = surface.scales.size();
  surface.values.assign(nq * ns, 0.0);
  surface.windows_per_scale.resize(ns);
  for (std::size_t si = 0; si < ns; ++si) {
    const auto f2 = fluctuations(y, surface.scales[si], config.detrend_order, config.two_sided);
    surface.windows_per_scale[si] = f2.size();
    for (std::size_t qi = 0; qi < nq; ++qi) {
      surface.values[qi * ns + si] = fq(f2, surface.q[qi]);
    }
  }
  return surface;
}

double GeneralizedHurst::at(double q_value) const {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::abs(q[i] - q_value) <= 1e-12) return h[i];
  }
  throw DataError(fmt::format("q = {} is not on the grid", q_value));
}

GeneralizedHurst hurst_spectrum(const FluctuationSurface& surface) {
  const std::size_t ns = surface.scales.size();
  if (ns < 6) {
    throw DataError(fmt::format("need at least 6 scales for a scaling fit, got {}", ns));
  }
  std::vector<double> log_s(ns);
  for (std::size_t si = 0; si < ns; ++si) {
    log_s[si] = std::log(static_cast<double>(surface.scales[si]));
  }
  GeneralizedHurst out;
  out.q = surface.q;
  out.h.resize(surface.q.size());
  out.r2.resize(surface.q.size());
  std::vector<double> log_f(ns);
  for (std::size_t qi = 0; qi < surface.q.size(); ++qi) {
    for (std::size_t si = 0; si < ns; ++si) {
      const double f = surface.at(qi, si);
      if (!(f > 0.0) || !std::isfinite(f)) {
        throw NumericalError(fmt::format(
            "non-positive fluctuation F_q(s) at q={} s={}", surface.q[qi], surface.scales[si]));
      }
      log_f[si] = std::log(f);
    }
    out.h[qi] = slope_of(log_s, log_f, &out.r2[qi]);
  }
  return out;
}

SingularitySpectrum singularity_spectrum(const GeneralizedHurst& hurst) {
  const std::size_t n = hurst.q.size();
  if (n < 3 || hurst.h.size() != n) {
    throw DataError("singularity spectrum needs at least 3 q values");
  }
  const double step = hurst.q[1] - hurst.q[0];
  if (!(step > 0.0)) throw DataError("q grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((hurst.q[i] - hurst.q[i - 1]) - step) > 1e-9 * step) {
      throw DataError("non-uniform q grid");
    }
  }
  std::vector<double> slope(n);
  slope[0] = (hurst.h[1] - hurst.h[0]) / step;
  slope[n - 1] = (hurst.h[n - 1] - hurst.h[n - 2]) / step;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slope[i] = (hurst.h[i + 1] - hurst.h[i - 1]) / (2.0 * step);
  }

  SingularitySpectrum spec;
  spec.q = hurst.q;
  spec.alpha.resize(n);
  spec.f_alpha.resize(n);
  std::optional<std::size_t> zero;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = hurst.q[i];
    spec.alpha[i] = hurst.h[i] + q * slope[i];
    spec.f_alpha[i] = q * (spec.alpha[i] - hurst.h[i]) + 1.0;
    if (q == 0.0) zero = i;
  }
  if (!zero) throw DataError("q grid must contain 0");
  spec.alpha0 = spec.alpha[*zero];
  return spec;
}

FractalSummary summarize(const SingularitySpectrum& spectrum,
                         const GeneralizedHurst& hurst) {
  if (spectrum.alpha.empty()) throw DataError("empty singularity spectrum");
  FractalSummary s;
  s.hurst = hurst.at(2.0);
  const auto [lo, hi] = std::minmax_element(spectrum.alpha.begin(), spectrum.alpha.end());
  s.alpha_min = *lo;
  s.alpha_max = *hi;
  s.alpha0 = spectrum.alpha0;
  s.delta_left = s.alpha0 - s.alpha_min;
  s.delta_right = s.alpha_max - s.alpha0;
  s.dimension = s.delta_left + s.delta_right;
  if (s.dimension < 1e-12) {
    s.degenerate = true;
    s.asymmetry = 0.0;
  } else {
    s.asymmetry = (s.delta_left - s.delta_right) / s.dimension;
  }
  return s;
}

MfdfaResult mfdfa(std::span<const double> x, const MfdfaConfig& config) {
  MfdfaResult result;
  result.surface = fluctuation_surface(x, config);
  result.hurst = hurst_spectrum(result.surface);
  result.spectrum = singularity_spectrum(result.hurst);
  result.summary = summarize(result.spectrum, result.hurst);
  return result;
}

double dfa(std::span<const double> x, const MfdfaConfig& config) {
  return mfdfa(x, config).summary.hurst;
}

}  // namespace fractext::fractal
