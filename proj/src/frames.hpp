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

// Internal frame-streaming helpers shared by the STFT and feature code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "audiolab/fft.hpp"
#include "audiolab/stft.hpp"

namespace audiolab::detail {

// Frames are processed in small blocks so bin-major outputs are written a
// cache line at a time.
inline constexpr std::size_t kFrameBlock = 8;

// Reflect index into [0, n) without repeating the edge sample, folding as
// many times as needed.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t r = i % period;
  if (r < 0) r += period;
  if (r >= static_cast<std::ptrdiff_t>(n)) r = period - r;
  return static_cast<std::size_t>(r);
}

inline double squared_magnitude(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }
inline double magnitude(Complex z) { return std::sqrt(squared_magnitude(z)); }

// Windowed one-sided spectra of the frames of one signal. Validates the
// config and the signal length on construction. Not thread-safe.
class FrameAnalyzer {
 public:
  FrameAnalyzer(std::span<const double> signal, const StftConfig& config);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t bins() const noexcept { return bins_; }

  // Spectra of frames [t0, t0 + count), frame-major in `block`
  // (count * bins values).
  void analyze(std::size_t t0, std::size_t count, std::span<Complex> block);

  // Calls fn(t0, count, block) over all frames in blocks of kFrameBlock.
  template <typename Fn>
  void for_each_block(Fn&& fn) {
    ComplexVector block(kFrameBlock * bins_);
    for (std::size_t t0 = 0; t0 < frames_; t0 += kFrameBlock) {
      const std::size_t count = std::min(kFrameBlock, frames_ - t0);
      analyze(t0, count, block);
      fn(t0, count, std::span<const Complex>(block).first(count * bins_));
    }
  }

 private:
  std::span<const double> signal_;
  StftConfig config_;
  std::size_t frames_;
  std::size_t bins_;
  RealVector window_;
  RealFftPlan plan_;
  RealVector frame_;
};

// istft() of frame-major spectra (frames x bins).
RealVector istft_frames(std::span<const Complex> frames, const StftConfig& config,
                        std::optional<std::size_t> expected_length);

// stft() into an existing spectrogram of matching shape, reusing its storage.
void stft_into(std::span<const double> signal, ComplexSpectrogram& out);

}  // namespace audiolab::detail
