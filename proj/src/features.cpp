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

#include "audiolab/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "audiolab/errors.hpp"
#include "frames.hpp"

namespace audiolab {

MelFilterbank::MelFilterbank(Matrix weights, double f_min, double f_max, MelScale scale)
    : weights_(std::move(weights)), f_min_(f_min), f_max_(f_max), scale_(scale) {
  support_.reserve(weights_.rows());
  for (std::size_t m = 0; m < weights_.rows(); ++m) {
    const auto row = weights_.row(m);
    std::size_t first = 0;
    while (first < row.size() && row[first] == 0.0) ++first;
    std::size_t last = row.size();
    while (last > first && row[last - 1] == 0.0) --last;
    support_.emplace_back(first, last);
  }
}

Matrix MelFilterbank::apply(const Matrix& spectrum) const {
  if (spectrum.rows() != bins()) {
    throw InvalidArgument("filterbank expects " + std::to_string(bins()) + " bins, got " +
                          std::to_string(spectrum.rows()));
  }
  Matrix out(n_mels(), spectrum.cols());
  for (std::size_t m = 0; m < n_mels(); ++m) {
    auto dst = out.row(m);
    const auto [first, last] = support_[m];
    for (std::size_t k = first; k < last; ++k) {
      const double w = weights_(m, k);
      if (w == 0.0) continue;
      const auto src = spectrum.row(k);
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += w * src[t];
    }
  }
  return out;
}

namespace {

double powered(Complex z, double power) {
  if (power == 2.0) return detail::squared_magnitude(z);
  if (power == 1.0) return detail::magnitude(z);
  return std::pow(detail::magnitude(z), power);
}

}  // namespace

Matrix complex_norm(const ComplexSpectrogram& spec, double power) {
  if (!(power > 0.0)) throw InvalidArgument("complex_norm power must be positive");
  Matrix out(spec.bins(), spec.frames());
  const auto in = spec.flat();
  auto dst = out.flat();
  for (std::size_t i = 0; i < in.size(); ++i) dst[i] = powered(in[i], power);
  return out;
}

Matrix spectrogram(std::span<const double> signal, int sample_rate, const StftConfig& config) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const double power = config.power.value_or(2.0);
  if (!(power > 0.0)) throw InvalidArgument("complex_norm power must be positive");
  detail::FrameAnalyzer analyzer(signal, config);
  const std::size_t bins = analyzer.bins();
  Matrix out(bins, analyzer.frames());
  analyzer.for_each_block([&](std::size_t t0, std::size_t count, std::span<const Complex> block) {
    for (std::size_t k = 0; k < bins; ++k) {
      double* row = out.row(k).data() + t0;
      for (std::size_t j = 0; j < count; ++j) row[j] = powered(block[j * bins + k], power);
    }
  });
  return out;
}

double hz_to_mel(double hz) {
  if (!(hz >= 0.0)) throw InvalidArgument("frequency must be non-negative");
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

double mel_to_hz(double mel) {
  if (!(mel >= 0.0)) throw InvalidArgument("mel value must be non-negative");
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(int sample_rate, std::size_t n_fft, std::size_t n_mels, double f_min,
                             double f_max) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (n_mels == 0) throw InvalidArgument("n_mels must be at least 1");
  if (!is_power_of_two(n_fft)) throw InvalidArgument("n_fft must be a power of two");
  const double nyquist = sample_rate / 2.0;
  if (f_max > nyquist) {
    throw InvalidArgument("f_max " + std::to_string(f_max) + " exceeds Nyquist " +
                          std::to_string(nyquist));
  }
  if (!(f_min >= 0.0 && f_min < f_max)) throw InvalidArgument("need 0 <= f_min < f_max");

  const std::size_t bins = n_fft / 2 + 1;
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> points(n_mels + 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double m = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1);
    points[i] = mel_to_hz(m);
  }

  Matrix weights(n_mels, bins);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = points[m], peak = points[m + 1], hi = points[m + 2];
    bool any = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n_fft);
      const double rising = (f - lo) / (peak - lo);
      const double falling = (hi - f) / (hi - peak);
      const double w = std::max(0.0, std::min(rising, falling));
      weights(m, k) = w;
      any = any || w > 0.0;
    }
    if (!any) {
      throw DegenerateFilterbank("mel filter " + std::to_string(m) +
                                 " covers no FFT bin; reduce n_mels or increase n_fft");
    }
  }
  return MelFilterbank(std::move(weights), f_min, f_max, MelScale::htk);
}

namespace {

MelFilterbank filterbank_for(int sample_rate, const StftConfig& config, const MelParams& params) {
  return mel_filterbank(sample_rate, config.n_fft, params.n_mels, params.f_min,
                        params.f_max.value_or(sample_rate / 2.0));
}

}  // namespace

FeatureMatrix mel_spectrogram(std::span<const double> signal, int sample_rate,
                              const StftConfig& config, const MelParams& params) {
  const auto fb = filterbank_for(sample_rate, config, params);
  detail::FrameAnalyzer analyzer(signal, config);
  const std::size_t bins = analyzer.bins();
  Matrix out(fb.n_mels(), analyzer.frames());
  RealVector power(bins);
  analyzer.for_each_block([&](std::size_t t0, std::size_t count, std::span<const Complex> block) {
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t k = 0; k < bins; ++k) power[k] = detail::squared_magnitude(block[j * bins + k]);
      for (std::size_t m = 0; m < fb.n_mels(); ++m) {
        const auto [first, last] = fb.support(m);
        const double* w = fb.weights().row(m).data();
        double acc = 0.0;
        for (std::size_t k = first; k < last; ++k) acc += w[k] * power[k];
        out(m, t0 + j) = acc;
      }
    }
  });
  return {std::move(out), static_cast<double>(sample_rate) / config.hop_length};
}

Matrix dct_matrix(std::size_t n_coeffs, std::size_t n_inputs, DctNorm) {
  if (n_coeffs == 0 || n_coeffs > n_inputs) {
    throw InvalidArgument("dct_matrix requires 1 <= n_coeffs <= n_inputs");
  }
  Matrix m(n_coeffs, n_inputs);
  const double n = static_cast<double>(n_inputs);
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < n_inputs; ++i) {
      m(k, i) = scale * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * i + 1.0) / (2.0 * n));
    }
  }
  return m;
}

FeatureMatrix mfcc(std::span<const double> signal, int sample_rate, const StftConfig& config,
                   const MelParams& params, std::size_t n_mfcc, double log_floor) {
  if (n_mfcc > params.n_mels) throw InvalidArgument("n_mfcc must not exceed n_mels");
  if (!(log_floor > 0.0)) throw InvalidArgument("log_floor must be positive");
  const auto dct = dct_matrix(n_mfcc, params.n_mels);
  auto mel = mel_spectrogram(signal, sample_rate, config, params);
  for (auto& v : mel.data.flat()) v = std::log(std::max(v, log_floor));

  Matrix out(n_mfcc, mel.data.cols());
  for (std::size_t k = 0; k < n_mfcc; ++k) {
    auto dst = out.row(k);
    for (std::size_t m = 0; m < params.n_mels; ++m) {
      const double w = dct(k, m);
      const auto src = mel.data.row(m);
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += w * src[t];
    }
  }
  return {std::move(out), mel.frame_rate};
}

RealVector spectral_centroid(const ComplexSpectrogram& spec) {
  const double bin_hz = static_cast<double>(spec.sample_rate()) / spec.config().n_fft;
  RealVector weighted(spec.frames(), 0.0);
  RealVector total(spec.frames(), 0.0);
  for (std::size_t k = 0; k < spec.bins(); ++k) {
    const auto row = spec.bin_row(k);
    const double f = bin_hz * static_cast<double>(k);
    for (std::size_t t = 0; t < row.size(); ++t) {
      const double mag = detail::magnitude(row[t]);
      weighted[t] += f * mag;
      total[t] += mag;
    }
  }
  RealVector out(spec.frames(), 0.0);
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (total[t] > 0.0) out[t] = weighted[t] / total[t];
  }
  return out;
}

RealVector spectral_centroid(std::span<const double> signal, int sample_rate,
                             const StftConfig& config) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  detail::FrameAnalyzer analyzer(signal, config);
  const std::size_t bins = analyzer.bins();
  const double bin_hz = static_cast<double>(sample_rate) / config.n_fft;
  RealVector out(analyzer.frames(), 0.0);
  analyzer.for_each_block([&](std::size_t t0, std::size_t count, std::span<const Complex> block) {
    for (std::size_t j = 0; j < count; ++j) {
      double weighted = 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < bins; ++k) {
        const double mag = detail::magnitude(block[j * bins + k]);
        weighted += bin_hz * static_cast<double>(k) * mag;
        total += mag;
      }
      if (total > 0.0) out[t0 + j] = weighted / total;
    }
  });
  return out;
}

Matrix amplitude_to_db(const Matrix& power, std::optional<double> top_db) {
  if (top_db && !(*top_db >= 0.0)) throw InvalidArgument("top_db must be non-negative");
  Matrix out(power.rows(), power.cols());
  const auto src = power.flat();
  auto dst = out.flat();
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!(src[i] >= 0.0)) throw InvalidArgument("amplitude_to_db input must be non-negative");
    dst[i] = 10.0 * std::log10(std::max(src[i], 1e-10));
    peak = std::max(peak, dst[i]);
  }
  if (top_db) {
    const double floor = peak - *top_db;
    for (auto& v : dst) v = std::max(v, floor);
  }
  return out;
}

}  // namespace audiolab
