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
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "audiolab/audio_buffer.hpp"
#include "audiolab/stft.hpp"

namespace audiolab {

enum class BenchOp { spectrogram, mfcc, spectral_centroid, griffin_lim, phase_vocoder };

std::string_view to_string(BenchOp op);
BenchOp bench_op_from_string(std::string_view name);
std::vector<BenchOp> all_bench_ops();

// 100 executions per trial for the feature ops, 10 for the phase ops.
std::size_t default_repetitions(BenchOp op);

struct BenchReport {
  std::string op_name;
  std::size_t repetitions_per_trial = 0;
  std::size_t trials = 0;
  double mean_seconds = 0.0;    // wall time of one trial (all repetitions)
  double stderr_seconds = 0.0;  // standard error of the trial times
  bool single_trial = false;    // stderr undefined, reported as 0
  std::string input_descriptor;
};

struct BenchOptions {
  std::size_t trials = 5;
  std::map<BenchOp, std::size_t> repetitions;  // missing ops use default_repetitions
  StftConfig stft = StftConfig::with(2048, 512);
  std::size_t n_mels = 128;
  std::size_t n_mfcc = 40;
  std::size_t griffin_lim_iterations = 32;
  double vocoder_rate = 1.3;
  std::string input_descriptor;
};

// Times each op on channel 0 of `input`, in request order. Per op: one
// untimed warmup, then `trials` timed blocks of back-to-back executions on a
// monotonic clock. Griffin-Lim and the phase vocoder start from a spectrogram
// computed outside the timed region.
std::vector<BenchReport> bench_run(std::span<const BenchOp> ops, const BenchOptions& options,
                                   const AudioBuffer& input);

inline constexpr std::string_view kBenchCsvHeader = "op,reps,trials,mean_s,stderr_s,input";
void write_bench_csv(std::span<const BenchReport> reports, std::ostream& out);

// Seeded uniform white noise in [-1, 1).
AudioBuffer white_noise(double seconds, int sample_rate, std::uint64_t seed);

}  // namespace audiolab
