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

#include "audiolab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include "audiolab/errors.hpp"

namespace audiolab {

namespace {

void require_power_of_two(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw InvalidArgument("FFT length must be a power of two, got " + std::to_string(n));
  }
}

Complex unit_root(std::size_t k, std::size_t n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// One radix-4 group of four length-q sub-transforms in bit-reversed order.
// r1 holds the odd half of the first pair, so it takes w^2j and r2 takes w^j.
void radix4_group_scalar(double* re, double* im, std::size_t q, const double* w, std::size_t j) {
  double* r0 = re;
  double* r1 = re + q;
  double* r2 = re + 2 * q;
  double* r3 = re + 3 * q;
  double* i0 = im;
  double* i1 = im + q;
  double* i2 = im + 2 * q;
  double* i3 = im + 3 * q;
  const double* w1r = w;
  const double* w1i = w + q;
  const double* w2r = w + 2 * q;
  const double* w2i = w + 3 * q;
  const double* w3r = w + 4 * q;
  const double* w3i = w + 5 * q;
  for (; j < q; ++j) {
    const double b1r = r1[j] * w2r[j] - i1[j] * w2i[j];
    const double b1i = r1[j] * w2i[j] + i1[j] * w2r[j];
    const double b2r = r2[j] * w1r[j] - i2[j] * w1i[j];
    const double b2i = r2[j] * w1i[j] + i2[j] * w1r[j];
    const double b3r = r3[j] * w3r[j] - i3[j] * w3i[j];
    const double b3i = r3[j] * w3i[j] + i3[j] * w3r[j];
    const double ur = r0[j] + b1r, ui = i0[j] + b1i;
    const double vr = r0[j] - b1r, vi = i0[j] - b1i;
    const double sr = b2r + b3r, si = b2i + b3i;
    const double dr = b2r - b3r, di = b2i - b3i;
    r0[j] = ur + sr;
    i0[j] = ui + si;
    r2[j] = ur - sr;
    i2[j] = ui - si;
    // v -/+ i d
    r1[j] = vr + di;
    i1[j] = vi - dr;
    r3[j] = vr - di;
    i3[j] = vi + dr;
  }
}

#if defined(__SSE2__)

// Same butterfly, two values of j per step.
void radix4_group(double* re, double* im, std::size_t q, const double* w) {
  std::size_t j = 0;
  for (; j + 2 <= q; j += 2) {
    const __m128d x1r = _mm_loadu_pd(re + q + j), x1i = _mm_loadu_pd(im + q + j);
    const __m128d x2r = _mm_loadu_pd(re + 2 * q + j), x2i = _mm_loadu_pd(im + 2 * q + j);
    const __m128d x3r = _mm_loadu_pd(re + 3 * q + j), x3i = _mm_loadu_pd(im + 3 * q + j);
    const __m128d w1r = _mm_loadu_pd(w + j), w1i = _mm_loadu_pd(w + q + j);
    const __m128d w2r = _mm_loadu_pd(w + 2 * q + j), w2i = _mm_loadu_pd(w + 3 * q + j);
    const __m128d w3r = _mm_loadu_pd(w + 4 * q + j), w3i = _mm_loadu_pd(w + 5 * q + j);
    const __m128d b1r = _mm_sub_pd(_mm_mul_pd(x1r, w2r), _mm_mul_pd(x1i, w2i));
    const __m128d b1i = _mm_add_pd(_mm_mul_pd(x1r, w2i), _mm_mul_pd(x1i, w2r));
    const __m128d b2r = _mm_sub_pd(_mm_mul_pd(x2r, w1r), _mm_mul_pd(x2i, w1i));
    const __m128d b2i = _mm_add_pd(_mm_mul_pd(x2r, w1i), _mm_mul_pd(x2i, w1r));
    const __m128d b3r = _mm_sub_pd(_mm_mul_pd(x3r, w3r), _mm_mul_pd(x3i, w3i));
    const __m128d b3i = _mm_add_pd(_mm_mul_pd(x3r, w3i), _mm_mul_pd(x3i, w3r));
    const __m128d x0r = _mm_loadu_pd(re + j), x0i = _mm_loadu_pd(im + j);
    const __m128d ur = _mm_add_pd(x0r, b1r), ui = _mm_add_pd(x0i, b1i);
    const __m128d vr = _mm_sub_pd(x0r, b1r), vi = _mm_sub_pd(x0i, b1i);
    const __m128d sr = _mm_add_pd(b2r, b3r), si = _mm_add_pd(b2i, b3i);
    const __m128d dr = _mm_sub_pd(b2r, b3r), di = _mm_sub_pd(b2i, b3i);
    _mm_storeu_pd(re + j, _mm_add_pd(ur, sr));
    _mm_storeu_pd(im + j, _mm_add_pd(ui, si));
    _mm_storeu_pd(re + 2 * q + j, _mm_sub_pd(ur, sr));
    _mm_storeu_pd(im + 2 * q + j, _mm_sub_pd(ui, si));
    _mm_storeu_pd(re + q + j, _mm_add_pd(vr, di));
    _mm_storeu_pd(im + q + j, _mm_sub_pd(vi, dr));
    _mm_storeu_pd(re + 3 * q + j, _mm_sub_pd(vr, di));
    _mm_storeu_pd(im + 3 * q + j, _mm_add_pd(vi, dr));
  }
  radix4_group_scalar(re, im, q, w, j);
}

#else

void radix4_group(double* re, double* im, std::size_t q, const double* w) {
  radix4_group_scalar(re, im, q, w, 0);
}

#endif

}  // namespace

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
  require_power_of_two(n);
  bitrev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }
  // Radix-4 stages combine four sub-transforms of length q. Odd powers of two
  // start with one radix-2 stage. Each stage with q > 1 stores six runs of q
  // values: re/im of w^j, w^2j, w^3j for j < q, with w = e^{-2 pi i / 4q}.
  first_quarter_ = bits % 2 ? 2 : 1;
  for (std::size_t q = first_quarter_; 4 * q <= n; q *= 4) {
    if (q == 1) continue;
    for (std::size_t p = 1; p <= 3; ++p) {
      for (std::size_t j = 0; j < q; ++j) twiddles_.push_back(unit_root(p * j, 4 * q).real());
      for (std::size_t j = 0; j < q; ++j) twiddles_.push_back(unit_root(p * j, 4 * q).imag());
    }
  }
}

void FftPlan::butterflies(double* re, double* im) const {
  const std::size_t n = n_;
  std::size_t q = first_quarter_;
  if (q == 2) {
    for (std::size_t s = 0; s < n; s += 2) {
      const double ar = re[s], ai = im[s];
      re[s] = ar + re[s + 1];
      im[s] = ai + im[s + 1];
      re[s + 1] = ar - re[s + 1];
      im[s + 1] = ai - im[s + 1];
    }
  } else if (4 <= n) {
    // Twiddle-free first radix-4 stage.
    for (std::size_t s = 0; s < n; s += 4) {
      const double ur = re[s] + re[s + 1], ui = im[s] + im[s + 1];
      const double vr = re[s] - re[s + 1], vi = im[s] - im[s + 1];
      const double sr = re[s + 2] + re[s + 3], si = im[s + 2] + im[s + 3];
      const double dr = re[s + 2] - re[s + 3], di = im[s + 2] - im[s + 3];
      re[s] = ur + sr;
      im[s] = ui + si;
      re[s + 2] = ur - sr;
      im[s + 2] = ui - si;
      re[s + 1] = vr + di;
      im[s + 1] = vi - dr;
      re[s + 3] = vr - di;
      im[s + 3] = vi + dr;
    }
    q = 4;
  }
  const double* w = twiddles_.data();
  for (; 4 * q <= n; q *= 4) {
    for (std::size_t s = 0; s < n; s += 4 * q) {
      radix4_group(re + s, im + s, q, w);
    }
    w += 6 * q;
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const { transform(data, true); }

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) {
    throw InvalidArgument("FFT plan of length " + std::to_string(n_) + " applied to " +
                          std::to_string(data.size()) + " samples");
  }
  thread_local std::vector<double> re;
  thread_local std::vector<double> im;
  re.resize(n_);
  im.resize(n_);
  // ifft(x) = conj(fft(conj(x))) / N
  const double sign = inverse ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    re[bitrev_[i]] = data[i].real();
    im[bitrev_[i]] = sign * data[i].imag();
  }
  butterflies(re.data(), im.data());
  const double scale = inverse ? 1.0 / static_cast<double>(n_) : 1.0;
  for (std::size_t i = 0; i < n_; ++i) data[i] = Complex(re[i] * scale, sign * im[i] * scale);
}

RealFftPlan::RealFftPlan(std::size_t n) : n_(n), half_(n >= 2 ? n / 2 : 1) {
  require_power_of_two(n);
  twiddles_.resize(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) twiddles_[k] = unit_root(k, n);
  re_.resize(std::max<std::size_t>(n / 2, 1));
  im_.resize(re_.size());
}

void RealFftPlan::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != bins()) {
    throw InvalidArgument("real FFT buffer size mismatch");
  }
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t m = n_ / 2;
  double* re = re_.data();
  double* im = im_.data();
  const std::size_t* rev = half_.bitrev_.data();
  for (std::size_t i = 0; i < m; ++i) {
    re[rev[i]] = in[2 * i];
    im[rev[i]] = in[2 * i + 1];
  }
  half_.butterflies(re, im);
  const Complex* w = twiddles_.data();
  Complex* dst = out.data();
  for (std::size_t k = 0; k <= m; ++k) {
    const std::size_t a = k == m ? 0 : k;
    const std::size_t b = k == 0 ? 0 : m - k;
    // even = (z[k] + conj(z[m-k])) / 2, odd = -i (z[k] - conj(z[m-k])) / 2
    const double er = 0.5 * (re[a] + re[b]);
    const double ei = 0.5 * (im[a] - im[b]);
    const double or_ = 0.5 * (im[a] + im[b]);
    const double oi = -0.5 * (re[a] - re[b]);
    const double wr = w[k].real(), wi = w[k].imag();
    dst[k] = Complex(er + wr * or_ - wi * oi, ei + wr * oi + wi * or_);
  }
}

void RealFftPlan::inverse(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != bins() || out.size() != n_) {
    throw InvalidArgument("real FFT buffer size mismatch");
  }
  if (n_ == 1) {
    out[0] = in[0].real();
    return;
  }
  const std::size_t m = n_ / 2;
  double* re = re_.data();
  double* im = im_.data();
  const std::size_t* rev = half_.bitrev_.data();
  auto bin = [&](std::size_t k) {
    return (k == 0 || k == m) ? Complex(in[k].real(), 0.0) : in[k];
  };
  for (std::size_t k = 0; k < m; ++k) {
    const Complex xk = bin(k);
    const Complex xc = bin(m - k);
    // even = (xk + conj(xc)) / 2, odd = (xk - conj(xc)) conj(w) / 2
    const double er = 0.5 * (xk.real() + xc.real());
    const double ei = 0.5 * (xk.imag() - xc.imag());
    const double dr = 0.5 * (xk.real() - xc.real());
    const double di = 0.5 * (xk.imag() + xc.imag());
    const double wr = twiddles_[k].real(), wi = -twiddles_[k].imag();
    const double or_ = dr * wr - di * wi;
    const double oi = dr * wi + di * wr;
    // z = even + i odd, stored conjugated for the forward kernel.
    re[rev[k]] = er - oi;
    im[rev[k]] = -(ei + or_);
  }
  half_.butterflies(re, im);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[2 * i] = re[i] * scale;
    out[2 * i + 1] = -im[i] * scale;
  }
}

ComplexVector fft(std::span<const Complex> signal) {
  ComplexVector out(signal.begin(), signal.end());
  FftPlan(out.size()).forward(out);
  return out;
}

ComplexVector ifft(std::span<const Complex> spectrum) {
  ComplexVector out(spectrum.begin(), spectrum.end());
  FftPlan(out.size()).inverse(out);
  return out;
}

}  // namespace audiolab
