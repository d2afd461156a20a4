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

#include "audiolab/audio_buffer.hpp"
#include "audiolab/fft.hpp"
#include "audiolab/window.hpp"

namespace audiolab {

struct StftConfig {
  std::size_t n_fft = 2048;
  std::size_t win_length = 2048;
  std::size_t hop_length = 512;
  WindowKind window = WindowKind::hann;
  bool center = true;
  std::optional<double> power;

  // Throws InvalidArgument unless 0 < hop <= win <= n_fft and n_fft is a
  // power of two.
  void validate() const;
  std::size_t bins() const noexcept { return n_fft / 2 + 1; }

  // Window of win_length, zero-padded symmetrically to n_fft.
  RealVector padded_window() const;

  static StftConfig with(std::size_t n_fft, std::size_t hop, WindowKind window = WindowKind::hann);
};

// One-sided time-frequency grid, stored bin-major: (bin, frame).
class ComplexSpectrogram {
 public:
  ComplexSpectrogram(std::size_t bins, std::size_t frames, StftConfig config, int sample_rate);

  std::size_t bins() const noexcept { return bins_; }
  std::size_t frames() const noexcept { return frames_; }
  const StftConfig& config() const noexcept { return config_; }
  int sample_rate() const noexcept { return sample_rate_; }

  Complex& operator()(std::size_t bin, std::size_t frame) { return data_[bin * frames_ + frame]; }
  Complex operator()(std::size_t bin, std::size_t frame) const { return data_[bin * frames_ + frame]; }

  std::span<Complex> bin_row(std::size_t bin) { return {data_.data() + bin * frames_, frames_}; }
  std::span<const Complex> bin_row(std::size_t bin) const {
    return {data_.data() + bin * frames_, frames_};
  }
  std::span<const Complex> flat() const noexcept { return data_; }
  std::span<Complex> flat() noexcept { return data_; }

 private:
  std::size_t bins_;
  std::size_t frames_;
  StftConfig config_;
  int sample_rate_;
  ComplexVector data_;
};

// Number of frames stft() produces for a signal of `length` samples.
std::size_t stft_frame_count(std::size_t length, const StftConfig& config);

ComplexSpectrogram stft(std::span<const double> signal, const StftConfig& config, int sample_rate);

// Weighted overlap-add inverse normalized by the accumulated squared window.
// Without `expected_length` the output has hop * (frames - 1) samples when
// centered. Throws NonInvertibleConfig if the window energy drops below 1e-11
// anywhere inside the returned range.
RealVector istft(const ComplexSpectrogram& spec, std::optional<std::size_t> expected_length = {});

}  // namespace audiolab
