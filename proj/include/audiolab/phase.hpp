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
#include <cstdint>
#include <optional>
#include <span>

#include "audiolab/audio_buffer.hpp"
#include "audiolab/stft.hpp"

namespace audiolab {

struct InitialPhase {
  enum class Kind { zeros, random };
  Kind kind = Kind::zeros;
  std::uint64_t seed = 0;

  static InitialPhase zeros() { return {}; }
  static InitialPhase random(std::uint64_t seed) { return {Kind::random, seed}; }
};

struct GriffinLimConfig {
  std::size_t n_iter = 32;
  double momentum = 0.99;  // 0 gives plain Griffin-Lim
  InitialPhase init;
  StftConfig stft;
  std::optional<std::size_t> length;  // defaults to the length implied by the frame count
};

// Reconstructs a waveform whose STFT magnitude approximates `magnitude`
// ([bins x frames]). Each iteration projects onto consistent spectrograms via
// istft/stft and keeps only the phase, with fast Griffin-Lim momentum.
AudioBuffer griffin_lim(const Matrix& magnitude, const GriffinLimConfig& config, int sample_rate);

// || |stft(signal)| - target ||_F / || target ||_F. Returns 0 for an all-zero
// target reconstructed by an all-zero signal.
double spectral_convergence(const Matrix& target, std::span<const double> signal,
                            const StftConfig& config, int sample_rate);

// Output frame count of phase_vocoder: the number of steps i * rate < frames.
std::size_t stretched_frame_count(std::size_t frames, double rate);

// Time-stretches by `rate` (> 1 speeds up) without changing pitch: linear
// magnitude interpolation between neighbouring frames and per-bin phase
// accumulation around the expected advance 2 pi hop k / n_fft.
ComplexSpectrogram phase_vocoder(const ComplexSpectrogram& spec, double rate);

}  // namespace audiolab
