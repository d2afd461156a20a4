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
#include <span>
#include <vector>

namespace audiolab {

using RealVector = std::vector<double>;

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Multichannel waveform. Every channel has the same number of frames and the
// sample rate is strictly positive; both are enforced at construction.
class AudioBuffer {
 public:
  AudioBuffer(std::vector<RealVector> channels, int sample_rate);
  static AudioBuffer mono(RealVector samples, int sample_rate);
  static AudioBuffer silence(std::size_t channels, std::size_t frames, int sample_rate);

  std::size_t channels() const noexcept { return channels_.size(); }
  std::size_t frames() const noexcept { return channels_.front().size(); }
  int sample_rate() const noexcept { return sample_rate_; }
  double duration_seconds() const noexcept {
    return static_cast<double>(frames()) / sample_rate_;
  }

  std::span<const double> channel(std::size_t c) const { return channels_.at(c); }
  std::span<double> channel_mut(std::size_t c) { return channels_.at(c); }
  const std::vector<RealVector>& data() const noexcept { return channels_; }

  bool all_finite() const noexcept;

  bool operator==(const AudioBuffer&) const = default;

 private:
  std::vector<RealVector> channels_;
  int sample_rate_;
};

}  // namespace audiolab
