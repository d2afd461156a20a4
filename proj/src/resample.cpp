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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "audiolab/errors.hpp"
#include "audiolab/filtering.hpp"

namespace audiolab {

void ResampleSpec::validate() const {
  if (orig_rate <= 0 || new_rate <= 0) throw InvalidArgument("resample rates must be positive");
  if (lowpass_filter_width == 0) throw InvalidArgument("lowpass_filter_width must be positive");
  if (!(rolloff > 0.0 && rolloff <= 1.0)) throw InvalidArgument("rolloff must lie in (0, 1]");
  if (window.kind == ResampleWindow::Kind::kaiser && !(window.beta >= 0.0)) {
    throw InvalidArgument("kaiser beta must be non-negative");
  }
}

std::size_t resampled_length(std::size_t length, long orig_rate, long new_rate) {
  const long g = std::gcd(orig_rate, new_rate);
  const auto orig = static_cast<unsigned long long>(orig_rate / g);
  const auto next = static_cast<unsigned long long>(new_rate / g);
  return static_cast<std::size_t>((length * next + orig - 1) / orig);
}

namespace {

// Upper bound on cached polyphase taps; beyond it kernels are evaluated per
// output sample.
constexpr std::size_t kMaxTableTaps = std::size_t{1} << 22;

class SincKernel {
 public:
  SincKernel(const ResampleSpec& spec, long orig, long next)
      : width_(static_cast<double>(spec.lowpass_filter_width)), window_(spec.window) {
    const double base = static_cast<double>(std::min(orig, next)) * spec.rolloff;
    to_zero_crossings_ = base / static_cast<double>(orig);
    half_taps_ = static_cast<long>(std::ceil(width_ / to_zero_crossings_));
    if (window_.kind == ResampleWindow::Kind::kaiser) {
      norm_ = 1.0 / std::cyl_bessel_i(0.0, window_.beta);
    }
  }

  long half_taps() const noexcept { return half_taps_; }

  // Weight of an input sample `offset` input periods away from the output instant.
  double operator()(double offset) const {
    const double t = offset * to_zero_crossings_;
    if (std::abs(t) > width_) return 0.0;
    double w;
    const double r = t / width_;
    if (window_.kind == ResampleWindow::Kind::kaiser) {
      w = std::cyl_bessel_i(0.0, window_.beta * std::sqrt(std::max(0.0, 1.0 - r * r))) * norm_;
    } else {
      const double c = std::cos(std::numbers::pi * r / 2.0);
      w = c * c;
    }
    const double x = std::numbers::pi * t;
    const double sinc = t == 0.0 ? 1.0 : std::sin(x) / x;
    return to_zero_crossings_ * sinc * w;
  }

 private:
  double width_;
  ResampleWindow window_;
  double to_zero_crossings_ = 1.0;
  double norm_ = 1.0;
  long half_taps_ = 0;
};

}  // namespace

RealVector resample(std::span<const double> x, const ResampleSpec& spec) {
  spec.validate();
  if (spec.orig_rate == spec.new_rate) return RealVector(x.begin(), x.end());

  const long g = std::gcd(spec.orig_rate, spec.new_rate);
  const long orig = spec.orig_rate / g;
  const long next = spec.new_rate / g;
  const SincKernel kernel(spec, orig, next);
  const long half = kernel.half_taps();
  const auto taps = static_cast<std::size_t>(2 * half + 1);

  const std::size_t out_len = resampled_length(x.size(), spec.orig_rate, spec.new_rate);
  RealVector y(out_len, 0.0);
  const auto in_len = static_cast<long>(x.size());

  const bool use_table = static_cast<std::size_t>(next) * taps <= kMaxTableTaps;
  std::vector<double> table;
  if (use_table) {
    table.resize(static_cast<std::size_t>(next) * taps);
    for (long p = 0; p < next; ++p) {
      const double frac = static_cast<double>((p * orig) % next) / static_cast<double>(next);
      for (long k = -half; k <= half; ++k) {
        table[static_cast<std::size_t>(p) * taps + static_cast<std::size_t>(k + half)] =
            kernel(static_cast<double>(k) - frac);
      }
    }
  }

  std::vector<double> scratch(use_table ? 0 : taps);
  for (std::size_t n = 0; n < out_len; ++n) {
    const long q = static_cast<long>(n) / next;
    const long p = static_cast<long>(n) % next;
    const long center = q * orig + (p * orig) / next;
    const double* weights;
    if (use_table) {
      weights = table.data() + static_cast<std::size_t>(p) * taps;
    } else {
      const double frac = static_cast<double>((p * orig) % next) / static_cast<double>(next);
      for (long k = -half; k <= half; ++k) {
        scratch[static_cast<std::size_t>(k + half)] = kernel(static_cast<double>(k) - frac);
      }
      weights = scratch.data();
    }
    const long lo = std::max(-half, -center);
    const long hi = std::min(half, in_len - 1 - center);
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      acc += weights[k + half] * x[static_cast<std::size_t>(center + k)];
    }
    y[n] = acc;
  }
  return y;
}

AudioBuffer resample(const AudioBuffer& buffer, const ResampleSpec& spec) {
  if (buffer.sample_rate() != spec.orig_rate) {
    throw InvalidArgument("buffer rate " + std::to_string(buffer.sample_rate()) +
                          " does not match resample orig_rate " + std::to_string(spec.orig_rate));
  }
  if (spec.new_rate > std::numeric_limits<int>::max()) {
    throw InvalidArgument("target sample rate out of range");
  }
  std::vector<RealVector> channels;
  channels.reserve(buffer.channels());
  for (std::size_t c = 0; c < buffer.channels(); ++c) {
    channels.push_back(resample(buffer.channel(c), spec));
  }
  return AudioBuffer(std::move(channels), static_cast<int>(spec.new_rate));
}

AudioBuffer resample(const AudioBuffer& buffer, int new_rate) {
  ResampleSpec spec;
  spec.orig_rate = buffer.sample_rate();
  spec.new_rate = new_rate;
  return resample(buffer, spec);
}

}  // namespace audiolab
