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

// Multifractal detrended fluctuation analysis (MFDFA).
//
// Pipeline for one series x of length N:
//
//   profile            Y(i) = sum_{k<=i} (x_k - mean(x))
//   fluctuations       per window of size s: mean squared residual F^2(s,v)
//                      after removing a least-squares polynomial of order m
//   fq                 F_q(s) = (mean_v F^2(s,v)^{q/2})^{1/q}, log-average at q=0
//   hurst_spectrum     h(q) = slope of log F_q(s) against log s
//   singularity_spectrum
//                      alpha = h + q h'(q), f(alpha) = q (alpha - h) + 1
//   summarize          H = h(2), D = alpha_max - alpha_min,
//                      A = (dAlpha_L - dAlpha_R) / D
//
// Windows whose residual is exactly zero carry no fluctuation and are left out
// of every F_q average; a scale where all windows vanish is a degenerate
// series and raises NumericalError.

#ifndef FRACTEXT_FRACTAL_HPP_
#define FRACTEXT_FRACTAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fractext::fractal {

// Shortest series accepted by mfdfa().
inline constexpr std::size_t kMinSeriesLength = 64;

struct MfdfaConfig {
  // Uniform grid containing 0 and 2. Default: -5 to 5 in steps of 0.25.
  std::vector<double> q_grid;
  // Explicit scales; when empty, `scale_count` log-spaced integer scales in
  // [s_min, floor(N * s_max_fraction)] are generated for each series.
  std::vector<std::size_t> scales;
  std::size_t scale_count = 20;
  std::size_t s_min = 16;
  double s_max_fraction = 0.25;
  int detrend_order = 1;
  bool two_sided = true;

  static MfdfaConfig defaults();
};

// q from q_min to q_max in `step` increments, computed as q_min + i*step so
// that 0 and 2 land exactly on the grid for the default values.
std::vector<double> make_q_grid(double q_min = -5.0, double q_max = 5.0,
                                double step = 0.25);

// Up to `count` distinct integer scales spaced evenly in log between s_min and
// floor(n * s_max_fraction). Rounding collisions are removed.
std::vector<std::size_t> log_scales(std::size_t n, std::size_t count,
                                    std::size_t s_min, double s_max_fraction);

// Throws DataError for non-finite values or (when min_length > 0) a series
// shorter than min_length.
void validate_series(std::span<const double> x,
                     std::size_t min_length = kMinSeriesLength);

// Cumulative sum of the mean-centred series, evaluated as
// (n * C_i - i * C_n) / n over the prefix sums C. For series whose prefix sums
// are exact (integer or dyadic data) adding a constant leaves every output
// bit unchanged.
std::vector<double> profile(std::span<const double> x);

// F^2(s, v) for every window. Windows tile the profile from the start; with
// two_sided the same number of windows is taken again from the end, giving
// 2 * floor(N / s) values.
std::vector<double> fluctuations(std::span<const double> profile, std::size_t s,
                                 int detrend_order, bool two_sided);

// q-th order fluctuation over per-window F^2 values; q == 0 uses
// exp(0.5 * mean(ln F^2)). Zero windows are skipped (see file comment).
double fq(std::span<const double> f2, double q);

struct FluctuationSurface {
  std::vector<double> q;
  std::vector<std::size_t> scales;
  std::vector<std::size_t> windows_per_scale;
  // F_q(s), row-major with one row per q and one column per scale.
  std::vector<double> values;

  double at(std::size_t qi, std::size_t si) const {
    return values[qi * scales.size() + si];
  }
};

FluctuationSurface fluctuation_surface(std::span<const double> x,
                                       const MfdfaConfig& config);

struct GeneralizedHurst {
  std::vector<double> q;
  std::vector<double> h;
  std::vector<double> r2;

  // Exponent at a q that lies on the grid; throws DataError otherwise.
  double at(double q_value) const;
};

// Least-squares slopes of ln F_q(s) against ln s over all scales; needs at
// least 6 scales.
GeneralizedHurst hurst_spectrum(const FluctuationSurface& surface);

struct SingularitySpectrum {
  std::vector<double> q;
  std::vector<double> alpha;
  std::vector<double> f_alpha;
  double alpha0 = 0.0;
};

// h'(q) by central differences, one-sided at the grid ends. The q grid must be
// uniform and contain 0.
SingularitySpectrum singularity_spectrum(const GeneralizedHurst& hurst);

struct FractalSummary {
  double hurst = 0.0;      // H = h(2)
  double dimension = 0.0;  // D = dAlpha_L + dAlpha_R = alpha_max - alpha_min
  double asymmetry = 0.0;  // A in [-1, 1]
  double alpha0 = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double delta_left = 0.0;
  double delta_right = 0.0;
  // Spectrum narrower than 1e-12; asymmetry is reported as 0.
  bool degenerate = false;
};

FractalSummary summarize(const SingularitySpectrum& spectrum,
                         const GeneralizedHurst& hurst);

struct MfdfaResult {
  FluctuationSurface surface;
  GeneralizedHurst hurst;
  SingularitySpectrum spectrum;
  FractalSummary summary;
};

MfdfaResult mfdfa(std::span<const double> x,
                  const MfdfaConfig& config = MfdfaConfig::defaults());

// Plain DFA: the q = 2 exponent, read from the same MFDFA code path.
double dfa(std::span<const double> x,
           const MfdfaConfig& config = MfdfaConfig::defaults());

// Fractional Gaussian noise with Hurst exponent in (0, 1), generated by
// circulant embedding of the exact fGn autocovariance. n must be a power of
// two.
std::vector<double> generate_fgn(double hurst, std::size_t n, std::uint64_t seed);

// Binomial multiplicative cascade of 2^levels cells with weight a in (0.5, 1)
// on one half of each split. Without a seed the heavier half is always the
// left one; with a seed the side is drawn per split.
std::vector<double> generate_binomial_cascade(
    double a, int levels, std::optional<std::uint64_t> seed = std::nullopt);

// Closed-form generalized Hurst exponent of the binomial cascade,
// h(q) = 1/q - log2(a^q + (1-a)^q)/q, continuous at q = 0.
double cascade_hurst(double a, double q);

// Closed-form Hoelder exponent alpha(q) of the binomial cascade.
double cascade_alpha(double a, double q);

}  // namespace fractext::fractal

#endif  // FRACTEXT_FRACTAL_HPP_
