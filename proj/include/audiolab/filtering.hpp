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

#include <array>
#include <cstddef>
#include <span>

#include "audiolab/audio_buffer.hpp"
#include "audiolab/fft.hpp"

namespace audiolab {

// Direct-form I difference equation with zero initial state:
//   a0 y[n] = sum_i b[i] x[n-i] - sum_{j>=1} a[j] y[n-j]
RealVector lfilter(std::span<const double> x, std::span<const double> b,
                   std::span<const double> a);

struct BiquadCoeffs {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a0 = 1.0, a1 = 0.0, a2 = 0.0;

  // H(e^{j omega}), omega in radians per sample.
  Complex response(double omega) const;
  std::array<Complex, 2> poles() const;
  bool is_stable() const;
};

RealVector biquad(std::span<const double> x, const BiquadCoeffs& c);

// Audio-EQ-cookbook designs. Bandpass has constant 0 dB peak gain.
BiquadCoeffs design_bandpass(double center_hz, double sample_rate, double q);
BiquadCoeffs design_lowpass(double cutoff_hz, double sample_rate, double q = 0.7071067811865476);
BiquadCoeffs design_highpass(double cutoff_hz, double sample_rate, double q = 0.7071067811865476);

struct ResampleWindow {
  enum class Kind { hann, kaiser };
  Kind kind = Kind::kaiser;
  double beta = 14.769656;

  static ResampleWindow hann() { return {Kind::hann, 0.0}; }
  static ResampleWindow kaiser(double beta = 14.769656) { return {Kind::kaiser, beta}; }
};

struct ResampleSpec {
  long orig_rate = 0;
  long new_rate = 0;
  std::size_t lowpass_filter_width = 64;  // zero crossings per side
  double rolloff = 0.99;
  ResampleWindow window;

  void validate() const;
};

// Output length ceil(length * new_rate / orig_rate).
std::size_t resampled_length(std::size_t length, long orig_rate, long new_rate);

// Band-limited windowed-sinc interpolation with cutoff
// min(orig, new) / 2 * rolloff. Equal rates copy the input unchanged. Only the
// ratio of the two rates matters here.
RealVector resample(std::span<const double> x, const ResampleSpec& spec);

// Requires buffer.sample_rate() == spec.orig_rate; the result carries new_rate.
AudioBuffer resample(const AudioBuffer& buffer, const ResampleSpec& spec);
AudioBuffer resample(const AudioBuffer& buffer, int new_rate);

}  // namespace audiolab
