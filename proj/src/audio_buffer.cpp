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

#include "audiolab/audio_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "audiolab/errors.hpp"

namespace audiolab {

AudioBuffer::AudioBuffer(std::vector<RealVector> channels, int sample_rate)
    : channels_(std::move(channels)), sample_rate_(sample_rate) {
  if (channels_.empty()) throw InvalidArgument("audio buffer needs at least one channel");
  if (sample_rate_ <= 0) throw InvalidArgument("sample rate must be positive");
  const auto n = channels_.front().size();
  for (const auto& ch : channels_) {
    if (ch.size() != n) throw InvalidArgument("all channels must have the same length");
  }
}

AudioBuffer AudioBuffer::mono(RealVector samples, int sample_rate) {
  std::vector<RealVector> channels;
  channels.push_back(std::move(samples));
  return AudioBuffer(std::move(channels), sample_rate);
}

AudioBuffer AudioBuffer::silence(std::size_t channels, std::size_t frames, int sample_rate) {
  return AudioBuffer(std::vector<RealVector>(channels, RealVector(frames, 0.0)), sample_rate);
}

bool AudioBuffer::all_finite() const noexcept {
  return std::all_of(channels_.begin(), channels_.end(), [](const RealVector& ch) {
    return std::all_of(ch.begin(), ch.end(), [](double v) { return std::isfinite(v); });
  });
}

}  // namespace audiolab
