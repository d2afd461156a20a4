// Copyright 2026 The audiolab Authors
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

#include "audiolab/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "audiolab/errors.hpp"

namespace audiolab {

RealVector lfilter(std::span<const double> x, std::span<const double> b,
                   std::span<const double> a) {
  if (a.empty() || a[0] == 0.0) throw InvalidArgument("lfilter requires a[0] != 0");
  if (b.empty()) throw InvalidArgument("lfilter requires at least one b coefficient");
  const double a0 = a[0];
  RealVector y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < b.size() && i <= n; ++i) acc += b[i] * x[n - i];
    for (std::size_t j = 1; j < a.size() && j <= n; ++j) acc -= a[j] * y[n - j];
    y[n] = acc / a0;
  }
  return y;
}

Complex BiquadCoeffs::response(double omega) const {
  const Complex z1 = std::polar(1.0, -omega);
  const Complex z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (a0 + a1 * z1 + a2 * z2);
}

std::array<Complex, 2> BiquadCoeffs::poles() const {
  // Roots of a0 z^2 + a1 z + a2.
  const Complex disc = std::sqrt(Complex(a1 * a1 - 4.0 * a0 * a2, 0.0));
  return {(-a1 + disc) / (2.0 * a0), (-a1 - disc) / (2.0 * a0)};
}

bool BiquadCoeffs::is_stable() const {
  if (a0 == 0.0) return false;
  const auto p = poles();
  return std::abs(p[0]) < 1.0 && std::abs(p[1]) < 1.0;
}

RealVector biquad(std::span<const double> x, const BiquadCoeffs& c) {
  const std::array<double, 3> b{c.b0, c.b1, c.b2};
  const std::array<double, 3> a{c.a0, c.a1, c.a2};
  return lfilter(x, b, a);
}

namespace {

struct CookbookTerms {
  double cos_w0;
  double alpha;
};

CookbookTerms cookbook(double freq_hz, double sample_rate, double q) {
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  if (!(freq_hz > 0.0 && freq_hz < sample_rate / 2.0)) {
    throw InvalidArgument("filter frequency must lie strictly between 0 and Nyquist");
  }
  if (!(q > 0.0)) throw InvalidArgument("Q must be positive");
  const double w0 = 2.0 * std::numbers::pi * freq_hz / sample_rate;
  return {std::cos(w0), std::sin(w0) / (2.0 * q)};
}

}  // namespace

BiquadCoeffs design_bandpass(double center_hz, double sample_rate, double q) {
  const auto [c, alpha] = cookbook(center_hz, sample_rate, q);
  return {alpha, 0.0, -alpha, 1.0 + alpha, -2.0 * c, 1.0 - alpha};
}

BiquadCoeffs design_lowpass(double cutoff_hz, double sample_rate, double q) {
  const auto [c, alpha] = cookbook(cutoff_hz, sample_rate, q);
  return {(1.0 - c) / 2.0, 1.0 - c, (1.0 - c) / 2.0, 1.0 + alpha, -2.0 * c, 1.0 - alpha};
}

BiquadCoeffs design_highpass(double cutoff_hz, double sample_rate, double q) {
  const auto [c, alpha] = cookbook(cutoff_hz, sample_rate, q);
  return {(1.0 + c) / 2.0, -(1.0 + c), (1.0 + c) / 2.0, 1.0 + alpha, -2.0 * c, 1.0 - alpha};
}

}  // namespace audiolab
