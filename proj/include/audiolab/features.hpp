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

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "audiolab/audio_buffer.hpp"
#include "audiolab/stft.hpp"

namespace audiolab {

enum class MelScale { htk };

struct MelParams {
  std::size_t n_mels = 128;
  double f_min = 0.0;
  std::optional<double> f_max;  // defaults to Nyquist
  MelScale scale = MelScale::htk;
};

// Triangular filters over the one-sided FFT bins. Rows are not area-normalized.
class MelFilterbank {
 public:
  MelFilterbank(Matrix weights, double f_min, double f_max, MelScale scale);

  const Matrix& weights() const noexcept { return weights_; }
  std::size_t n_mels() const noexcept { return weights_.rows(); }
  std::size_t bins() const noexcept { return weights_.cols(); }
  double f_min() const noexcept { return f_min_; }
  double f_max() const noexcept { return f_max_; }
  MelScale scale() const noexcept { return scale_; }
  // Half-open range of bins where filter m is nonzero.
  std::pair<std::size_t, std::size_t> support(std::size_t m) const { return support_.at(m); }

  // weights * spectrum, for spectrum laid out [bins x frames].
  Matrix apply(const Matrix& spectrum) const;

 private:
  Matrix weights_;
  double f_min_;
  double f_max_;
  MelScale scale_;
  std::vector<std::pair<std::size_t, std::size_t>> support_;  // [first, last) nonzero bins per row
};

struct FeatureMatrix {
  Matrix data;  // [coefficients or bands x frames]
  double frame_rate = 0.0;
};

// Elementwise |z|^power, shape [bins x frames].
Matrix complex_norm(const ComplexSpectrogram& spec, double power);

// |stft(x)|^p with p = config.power (default 2).
Matrix spectrogram(std::span<const double> signal, int sample_rate, const StftConfig& config);

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

MelFilterbank mel_filterbank(int sample_rate, std::size_t n_fft, std::size_t n_mels, double f_min,
                             double f_max);

FeatureMatrix mel_spectrogram(std::span<const double> signal, int sample_rate,
                              const StftConfig& config, const MelParams& params);

enum class DctNorm { ortho };

// Orthonormal DCT-II, shape [n_coeffs x n_inputs].
Matrix dct_matrix(std::size_t n_coeffs, std::size_t n_inputs, DctNorm norm = DctNorm::ortho);

// DCT of the natural log of the floored mel power spectrogram.
FeatureMatrix mfcc(std::span<const double> signal, int sample_rate, const StftConfig& config,
                   const MelParams& params, std::size_t n_mfcc, double log_floor = 1e-10);

// Magnitude-weighted mean frequency per frame, in Hz. Silent frames give 0.
RealVector spectral_centroid(const ComplexSpectrogram& spec);
RealVector spectral_centroid(std::span<const double> signal, int sample_rate,
                             const StftConfig& config);

// 10 log10(max(p, 1e-10)), optionally clamped to (max - top_db).
Matrix amplitude_to_db(const Matrix& power, std::optional<double> top_db = {});

}  // namespace audiolab
