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

#include "audiolab/stft.hpp"

#include <algorithm>
#include <string>

#include "audiolab/errors.hpp"
#include "frames.hpp"

namespace audiolab {

void StftConfig::validate() const {
  if (!is_power_of_two(n_fft)) {
    throw InvalidArgument("n_fft must be a power of two, got " + std::to_string(n_fft));
  }
  if (hop_length == 0 || hop_length > win_length || win_length > n_fft) {
    throw InvalidArgument("STFT config requires 0 < hop_length <= win_length <= n_fft");
  }
  if (power && !(*power > 0.0)) throw InvalidArgument("STFT power must be positive");
}

RealVector StftConfig::padded_window() const {
  const RealVector w = make_window(window, win_length, true);
  RealVector padded(n_fft, 0.0);
  const std::size_t left = (n_fft - win_length) / 2;
  std::copy(w.begin(), w.end(), padded.begin() + static_cast<std::ptrdiff_t>(left));
  return padded;
}

StftConfig StftConfig::with(std::size_t n_fft, std::size_t hop, WindowKind window) {
  StftConfig c;
  c.n_fft = n_fft;
  c.win_length = n_fft;
  c.hop_length = hop;
  c.window = window;
  return c;
}

ComplexSpectrogram::ComplexSpectrogram(std::size_t bins, std::size_t frames, StftConfig config,
                                       int sample_rate)
    : bins_(bins),
      frames_(frames),
      config_(config),
      sample_rate_(sample_rate),
      data_(bins * frames) {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
}

std::size_t stft_frame_count(std::size_t length, const StftConfig& config) {
  if (config.center) return 1 + length / config.hop_length;
  if (length < config.n_fft) return 0;
  return 1 + (length - config.n_fft) / config.hop_length;
}

namespace detail {

namespace {

std::size_t validated_n_fft(const StftConfig& config) {
  config.validate();
  return config.n_fft;
}

void fill(FrameAnalyzer& analyzer, ComplexSpectrogram& out) {
  const std::size_t bins = analyzer.bins();
  analyzer.for_each_block([&](std::size_t t0, std::size_t count, std::span<const Complex> block) {
    for (std::size_t k = 0; k < bins; ++k) {
      Complex* row = out.bin_row(k).data() + t0;
      for (std::size_t j = 0; j < count; ++j) row[j] = block[j * bins + k];
    }
  });
}

}  // namespace

FrameAnalyzer::FrameAnalyzer(std::span<const double> signal, const StftConfig& config)
    : signal_(signal),
      config_(config),
      frames_(0),
      bins_(config.bins()),
      window_(),
      plan_(validated_n_fft(config)),
      frame_(config.n_fft) {
  if (signal.empty()) throw InvalidArgument("stft of an empty signal");
  if (!config.center && signal.size() < config.n_fft) {
    throw InvalidArgument("signal of " + std::to_string(signal.size()) +
                          " samples is shorter than n_fft without centering");
  }
  frames_ = stft_frame_count(signal.size(), config);
  window_ = config.padded_window();
}

void FrameAnalyzer::analyze(std::size_t t0, std::size_t count, std::span<Complex> block) {
  const std::size_t n_fft = config_.n_fft;
  const auto pad = config_.center ? static_cast<std::ptrdiff_t>(n_fft / 2) : 0;
  const auto length = static_cast<std::ptrdiff_t>(signal_.size());
  for (std::size_t j = 0; j < count; ++j) {
    const auto start = static_cast<std::ptrdiff_t>((t0 + j) * config_.hop_length) - pad;
    if (start >= 0 && start + static_cast<std::ptrdiff_t>(n_fft) <= length) {
      const double* src = signal_.data() + start;
      for (std::size_t n = 0; n < n_fft; ++n) frame_[n] = src[n] * window_[n];
    } else {
      for (std::size_t n = 0; n < n_fft; ++n) {
        const auto idx = start + static_cast<std::ptrdiff_t>(n);
        frame_[n] = signal_[reflect_index(idx, signal_.size())] * window_[n];
      }
    }
    plan_.forward(frame_, block.subspan(j * bins_, bins_));
  }
}

void stft_into(std::span<const double> signal, ComplexSpectrogram& out) {
  FrameAnalyzer analyzer(signal, out.config());
  if (analyzer.frames() != out.frames() || analyzer.bins() != out.bins()) {
    throw InvalidArgument("stft output shape mismatch");
  }
  fill(analyzer, out);
}

}  // namespace detail

ComplexSpectrogram stft(std::span<const double> signal, const StftConfig& config, int sample_rate) {
  detail::FrameAnalyzer analyzer(signal, config);
  ComplexSpectrogram spec(config.bins(), analyzer.frames(), config, sample_rate);
  detail::fill(analyzer, spec);
  return spec;
}

namespace {

// Windowed overlap-add normalized by the summed squared window. `fetch(t0,
// count, block)` returns the frame-major spectra of frames [t0, t0 + count).
template <typename Fetch>
RealVector overlap_add(const StftConfig& config, std::size_t frames,
                       std::optional<std::size_t> expected_length, Fetch&& fetch) {
  config.validate();
  const std::size_t n_fft = config.n_fft;
  const std::size_t hop = config.hop_length;
  if (frames == 0) return RealVector(expected_length.value_or(0), 0.0);

  const std::size_t ola_length = n_fft + hop * (frames - 1);
  const std::size_t start = config.center ? n_fft / 2 : 0;
  const std::size_t natural = config.center ? ola_length - n_fft : ola_length;
  const std::size_t length = expected_length.value_or(natural);
  const std::size_t available = std::min(length, ola_length - start);

  const RealVector window = config.padded_window();
  // Summed squared window at sample s of the padded signal. Away from the
  // ends every frame that can overlap s exists, so the sum only depends on
  // s mod hop.
  const std::size_t span = (n_fft + hop - 1) / hop;  // frames overlapping one sample, at most
  RealVector periodic(hop, 0.0);
  for (std::size_t n = 0; n < n_fft; ++n) periodic[n % hop] += window[n] * window[n];
  auto energy = [&](std::size_t s) {
    const std::size_t q = s / hop;
    if (q + 1 >= span && q < frames) return periodic[s % hop];
    double e = 0.0;
    const std::size_t t_hi = std::min(q, frames - 1);
    for (std::size_t t = t_hi + 1; t-- > 0;) {
      const std::size_t off = s - t * hop;
      if (off >= n_fft) break;
      e += window[off] * window[off];
    }
    return e;
  };

  // Accumulate directly in output coordinates: padded sample s lands at s - start.
  RealVector out(length, 0.0);
  const std::size_t n_bins = config.bins();
  RealFftPlan plan(n_fft);
  RealVector frame(n_fft);

  for (std::size_t t0 = 0; t0 < frames; t0 += detail::kFrameBlock) {
    const std::size_t count = std::min(detail::kFrameBlock, frames - t0);
    const std::span<const Complex> block = fetch(t0, count);
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t s0 = (t0 + j) * hop;
      const std::size_t lo = s0 < start ? start - s0 : 0;
      const std::size_t hi = std::min(n_fft, start + available - std::min(s0, start + available));
      if (lo >= hi) continue;
      plan.inverse(block.subspan(j * n_bins, n_bins), frame);
      double* acc = out.data() + (s0 + lo - start);
      for (std::size_t n = lo; n < hi; ++n) acc[n - lo] += frame[n] * window[n];
    }
  }

  auto check = [&](double e, std::size_t i) {
    if (e < 1e-11) {
      throw NonInvertibleConfig("window energy vanishes at sample " + std::to_string(i) +
                                "; window/hop combination is not invertible");
    }
  };
  RealVector inv_periodic(hop);
  for (std::size_t r = 0; r < hop; ++r) inv_periodic[r] = periodic[r] < 1e-11 ? 0.0 : 1.0 / periodic[r];
  for (std::size_t i = 0; i < available; ++i) {
    const std::size_t s = start + i;
    const std::size_t q = s / hop;
    if (q + 1 >= span && q < frames) {
      const std::size_t r = s % hop;
      if (inv_periodic[r] == 0.0) check(periodic[r], i);
      out[i] *= inv_periodic[r];
    } else {
      const double e = energy(s);
      check(e, i);
      out[i] /= e;
    }
  }
  return out;
}

}  // namespace

RealVector istft(const ComplexSpectrogram& spec, std::optional<std::size_t> expected_length) {
  const StftConfig& config = spec.config();
  config.validate();
  if (spec.bins() != config.bins()) {
    throw InvalidArgument("spectrogram has " + std::to_string(spec.bins()) + " bins, config expects " +
                          std::to_string(config.bins()));
  }
  const std::size_t n_bins = spec.bins();
  ComplexVector block(detail::kFrameBlock * n_bins);
  return overlap_add(config, spec.frames(), expected_length, [&](std::size_t t0, std::size_t count) {
    for (std::size_t k = 0; k < n_bins; ++k) {
      const Complex* row = spec.bin_row(k).data() + t0;
      for (std::size_t j = 0; j < count; ++j) block[j * n_bins + k] = row[j];
    }
    return std::span<const Complex>(block).first(count * n_bins);
  });
}

RealVector detail::istft_frames(std::span<const Complex> frames, const StftConfig& config,
                                std::optional<std::size_t> expected_length) {
  const std::size_t n_bins = config.bins();
  if (frames.size() % n_bins != 0) throw InvalidArgument("frame-major spectra size mismatch");
  return overlap_add(config, frames.size() / n_bins, expected_length, [&](std::size_t t0, std::size_t count) {
    return frames.subspan(t0 * n_bins, count * n_bins);
  });
}

}  // namespace audiolab
