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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace audiolab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }
std::size_t next_power_of_two(std::size_t n) noexcept;

// Precomputed twiddles and bit-reversal permutation for an in-place radix-4
// transform of a fixed power-of-two length. Immutable after construction, so a
// single plan may be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  // X[k] = sum_n x[n] e^{-2 pi i k n / N}
  void forward(std::span<Complex> data) const;
  // Inverse including the 1/N factor.
  void inverse(std::span<Complex> data) const;

 private:
  friend class RealFftPlan;

  void transform(std::span<Complex> data, bool inverse) const;
  // In-place split-format transform of bit-reversal-permuted input.
  void butterflies(double* re, double* im) const;

  std::size_t n_;
  std::size_t first_quarter_ = 1;
  std::vector<std::size_t> bitrev_;
  std::vector<double> twiddles_;  // radix-4 stage twiddles, see constructor
};

// Real-input transform of length N via a complex transform of length N/2.
// Produces the one-sided spectrum of N/2 + 1 bins. Holds a scratch buffer, so
// use one plan per thread.
class RealFftPlan {
 public:
  explicit RealFftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<Complex> out) const;
  // Hermitian-extension inverse; imaginary parts of the DC and Nyquist bins
  // are ignored. Includes the 1/N factor.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

 private:
  std::size_t n_;
  FftPlan half_;
  ComplexVector twiddles_;  // e^{-2 pi i k / N}, k <= N/2
  mutable std::vector<double> re_;
  mutable std::vector<double> im_;
};

ComplexVector fft(std::span<const Complex> signal);
ComplexVector ifft(std::span<const Complex> spectrum);

}  // namespace audiolab
