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

#include "audiolab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "audiolab/errors.hpp"
#include "frames.hpp"

namespace audiolab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps to (-pi, pi].
double wrap_phase(double x) {
  return x - kTwoPi * std::ceil((x - std::numbers::pi) / kTwoPi);
}

}  // namespace

AudioBuffer griffin_lim(const Matrix& magnitude, const GriffinLimConfig& config, int sample_rate) {
  const StftConfig& sc = config.stft;
  sc.validate();
  if (magnitude.rows() != sc.bins()) {
    throw InvalidArgument("magnitude has " + std::to_string(magnitude.rows()) +
                          " bins, n_fft implies " + std::to_string(sc.bins()));
  }
  if (!(config.momentum >= 0.0 && config.momentum < 1.0)) {
    throw InvalidArgument("momentum must lie in [0, 1)");
  }
  for (double v : magnitude.flat()) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("magnitude entries must be finite and non-negative");
    }
  }

  // Iterations run on frame-major copies so every pass is contiguous.
  const std::size_t bins = magnitude.rows();
  const std::size_t frames = magnitude.cols();
  RealVector mag(bins * frames);
  for (std::size_t k = 0; k < bins; ++k) {
    for (std::size_t t = 0; t < frames; ++t) mag[t * bins + k] = magnitude(k, t);
  }
  ComplexVector est(mag.size());
  if (config.init.kind == InitialPhase::Kind::random) {
    std::mt19937_64 rng(config.init.seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (std::size_t k = 0; k < bins; ++k) {
      for (std::size_t t = 0; t < frames; ++t) {
        est[t * bins + k] = mag[t * bins + k] * std::polar(1.0, u(rng));
      }
    }
  } else {
    for (std::size_t i = 0; i < est.size(); ++i) est[i] = mag[i];
  }

  const std::optional<std::size_t> length = config.length;
  const double blend = config.momentum / (1.0 + config.momentum);
  ComplexVector rebuilt(est.size());
  ComplexVector previous(est.size(), Complex(0.0, 0.0));

  for (std::size_t it = 0; it < config.n_iter; ++it) {
    const auto inverse = detail::istft_frames(est, sc, length);
    if (inverse.empty() || stft_frame_count(inverse.size(), sc) != frames) {
      throw InvalidArgument("requested length does not reproduce the magnitude frame count");
    }
    detail::FrameAnalyzer(inverse, sc).analyze(0, frames, rebuilt);
    for (std::size_t i = 0; i < est.size(); ++i) {
      const double zr = rebuilt[i].real() - blend * previous[i].real();
      const double zi = rebuilt[i].imag() - blend * previous[i].imag();
      const double scale = mag[i] / (std::sqrt(zr * zr + zi * zi) + 1e-16);
      est[i] = Complex(zr * scale, zi * scale);
    }
    std::swap(previous, rebuilt);
  }
  return AudioBuffer::mono(detail::istft_frames(est, sc, length), sample_rate);
}

double spectral_convergence(const Matrix& target, std::span<const double> signal,
                            const StftConfig& config, int sample_rate) {
  const auto spec = stft(signal, config, sample_rate);
  if (spec.bins() != target.rows() || spec.frames() != target.cols()) {
    throw InvalidArgument("signal does not reproduce the target spectrogram shape");
  }
  double diff = 0.0, ref = 0.0;
  const auto s = spec.flat();
  const auto t = target.flat();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = detail::magnitude(s[i]) - t[i];
    diff += d * d;
    ref += t[i] * t[i];
  }
  if (ref == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(diff / ref);
}

std::size_t stretched_frame_count(std::size_t frames, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("rate must be positive");
  const double total = static_cast<double>(frames);
  auto n = static_cast<std::size_t>(std::ceil(total / rate));
  while (n > 0 && static_cast<double>(n - 1) * rate >= total) --n;
  while (static_cast<double>(n) * rate < total) ++n;
  return n;
}

ComplexSpectrogram phase_vocoder(const ComplexSpectrogram& spec, double rate) {
  const std::size_t out_frames = stretched_frame_count(spec.frames(), rate);
  const StftConfig& config = spec.config();
  ComplexSpectrogram out(spec.bins(), out_frames, config, spec.sample_rate());
  const std::size_t frames = spec.frames();

  // Per-row magnitude and phase, with a zero cell past the end.
  std::vector<double> mags(frames + 2, 0.0), args(frames + 2, 0.0);
  for (std::size_t k = 0; k < spec.bins(); ++k) {
    const auto in = spec.bin_row(k);
    auto dst = out.bin_row(k);
    const double advance =
        kTwoPi * static_cast<double>(config.hop_length) * static_cast<double>(k) / config.n_fft;
    for (std::size_t t = 0; t < frames; ++t) {
      mags[t] = detail::magnitude(in[t]);
      args[t] = std::arg(in[t]);
    }

    double phase = frames > 0 ? args[0] : 0.0;
    for (std::size_t i = 0; i < out_frames; ++i) {
      const double step = static_cast<double>(i) * rate;
      const auto idx = std::min(static_cast<std::size_t>(std::floor(step)), frames);
      const double alpha = step - std::floor(step);
      const double mag = alpha * mags[idx + 1] + (1.0 - alpha) * mags[idx];
      dst[i] = std::polar(mag, phase);
      const double delta = args[idx + 1] - args[idx] - advance;
      // Reduced mod 2 pi each step so rounding does not grow with the frame count.
      phase = wrap_phase(phase + wrap_phase(delta) + advance);
    }
  }
  return out;
}

}  // namespace audiolab
