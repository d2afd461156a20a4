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

#include "audiolab/effects.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

#include "audiolab/errors.hpp"
#include "audiolab/filtering.hpp"
#include "audiolab/phase.hpp"
#include "audiolab/stft.hpp"

namespace audiolab {

namespace {

using Values = std::span<const double>;

struct EffectEntry {
  std::string_view name;
  std::size_t arity;
  std::string_view usage;
  // Returns an error message for out-of-range values, empty when valid.
  std::function<std::string(Values)> check;
  std::function<AudioBuffer(const AudioBuffer&, Values)> apply;
};

// Denominator bound for rate ratios used by speed and pitch.
constexpr long kMaxRatioDen = 256;

std::vector<RealVector> copy_channels(const AudioBuffer& b) { return b.data(); }

AudioBuffer gain(const AudioBuffer& in, Values v) {
  if (v[0] == 0.0) return in;
  const double g = std::pow(10.0, v[0] / 20.0);
  auto channels = copy_channels(in);
  for (auto& ch : channels) {
    for (auto& s : ch) s *= g;
  }
  return AudioBuffer(std::move(channels), in.sample_rate());
}

std::size_t seconds_to_samples(double seconds, int rate, std::size_t limit) {
  const double n = std::floor(seconds * rate);
  return n >= static_cast<double>(limit) ? limit : static_cast<std::size_t>(n);
}

AudioBuffer trim(const AudioBuffer& in, Values v) {
  const std::size_t start = seconds_to_samples(v[0], in.sample_rate(), in.frames());
  const std::size_t count = seconds_to_samples(v[1], in.sample_rate(), in.frames() - start);
  std::vector<RealVector> channels;
  for (std::size_t c = 0; c < in.channels(); ++c) {
    const auto ch = in.channel(c);
    channels.emplace_back(ch.begin() + static_cast<std::ptrdiff_t>(start),
                          ch.begin() + static_cast<std::ptrdiff_t>(start + count));
  }
  return AudioBuffer(std::move(channels), in.sample_rate());
}

AudioBuffer fade(const AudioBuffer& in, Values v) {
  const std::size_t n = in.frames();
  const std::size_t fade_in = seconds_to_samples(v[0], in.sample_rate(), n);
  const std::size_t fade_out = seconds_to_samples(v[1], in.sample_rate(), n);
  auto channels = copy_channels(in);
  for (auto& ch : channels) {
    for (std::size_t i = 0; i < fade_in; ++i) ch[i] *= static_cast<double>(i) / fade_in;
    for (std::size_t i = 0; i < fade_out; ++i) ch[n - 1 - i] *= static_cast<double>(i) / fade_out;
  }
  return AudioBuffer(std::move(channels), in.sample_rate());
}

AudioBuffer rate(const AudioBuffer& in, Values v) {
  return resample(in, static_cast<int>(v[0]));
}

// Resamples as though the input ran `factor` times faster, keeping the label.
AudioBuffer play_faster(const AudioBuffer& in, double factor) {
  const auto [num, den] = rational_approximation(factor, kMaxRatioDen);
  if (num == den) return in;
  ResampleSpec spec;
  spec.orig_rate = num;
  spec.new_rate = den;
  std::vector<RealVector> channels;
  for (std::size_t c = 0; c < in.channels(); ++c) channels.push_back(resample(in.channel(c), spec));
  return AudioBuffer(std::move(channels), in.sample_rate());
}

AudioBuffer speed(const AudioBuffer& in, Values v) { return play_faster(in, v[0]); }

AudioBuffer tempo(const AudioBuffer& in, Values v) { return time_stretch(in, v[0]); }

AudioBuffer pitch(const AudioBuffer& in, Values v) {
  const double factor = std::pow(2.0, v[0] / 1200.0);
  // Stretch to factor x the duration, then play factor x faster.
  const auto shifted = play_faster(time_stretch(in, 1.0 / factor), factor);
  std::vector<RealVector> channels = shifted.data();
  for (auto& ch : channels) ch.resize(in.frames(), 0.0);
  return AudioBuffer(std::move(channels), in.sample_rate());
}

std::string require_positive(Values v, std::string_view what) {
  return v[0] > 0.0 ? "" : std::string(what) + " must be positive";
}

const std::vector<EffectEntry>& registry() {
  static const std::vector<EffectEntry> entries = {
      {"gain", 1, "gain <dB>", [](Values) { return std::string(); }, gain},
      {"trim", 2, "trim <start_s> <duration_s>",
       [](Values v) {
         return v[0] >= 0.0 && v[1] >= 0.0 ? std::string() : "trim times must be non-negative";
       },
       trim},
      {"fade", 2, "fade <in_s> <out_s>",
       [](Values v) {
         return v[0] >= 0.0 && v[1] >= 0.0 ? std::string() : "fade lengths must be non-negative";
       },
       fade},
      {"rate", 1, "rate <hz>",
       [](Values v) {
         return v[0] >= 1.0 && v[0] <= 768000.0 && v[0] == std::floor(v[0])
                    ? std::string()
                    : "rate must be an integer in [1, 768000]";
       },
       rate},
      {"speed", 1, "speed <factor in [0.01, 100]>",
       [](Values v) {
         return v[0] >= 0.01 && v[0] <= 100.0 ? std::string() : "speed factor must lie in [0.01, 100]";
       },
       speed},
      {"tempo", 1, "tempo <factor in (0, 100]>",
       [](Values v) {
         auto msg = require_positive(v, "tempo factor");
         return msg.empty() && v[0] > 100.0 ? "tempo factor must not exceed 100" : msg;
       },
       tempo},
      {"pitch", 1, "pitch <cents in [-2400, 2400]>",
       [](Values v) {
         return std::abs(v[0]) <= 2400.0 ? std::string() : "pitch shift must lie in [-2400, 2400] cents";
       },
       pitch},
  };
  return entries;
}

const EffectEntry* find_effect(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

bool parse_number(const std::string& token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

EffectChain EffectChain::operator+(const EffectChain& tail) const {
  EffectChain out = *this;
  out.effects.insert(out.effects.end(), tail.effects.begin(), tail.effects.end());
  return out;
}

std::vector<EffectInfo> registered_effects() {
  std::vector<EffectInfo> out;
  for (const auto& e : registry()) out.push_back({e.name, e.arity, e.usage});
  return out;
}

EffectChain parse_chain(std::span<const std::string> tokens) {
  EffectChain chain;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const EffectEntry* entry = find_effect(tokens[i]);
    if (entry == nullptr) {
      throw ParseError("unknown effect '" + tokens[i] + "' at position " + std::to_string(i), i);
    }
    EffectDescriptor d;
    d.name = tokens[i];
    const std::size_t name_pos = i++;
    for (std::size_t a = 0; a < entry->arity; ++a, ++i) {
      if (i >= tokens.size()) {
        throw ParseError(std::string(entry->name) + " requires " + std::to_string(entry->arity) +
                             " argument" + (entry->arity == 1 ? "" : "s") + " (usage: " +
                             std::string(entry->usage) + ")",
                         i);
      }
      double value = 0.0;
      if (!parse_number(tokens[i], value)) {
        throw ParseError("argument '" + tokens[i] + "' to " + d.name + " at position " +
                             std::to_string(i) + " is not a number",
                         i);
      }
      d.args.push_back(tokens[i]);
      d.values.push_back(value);
    }
    if (auto msg = entry->check(d.values); !msg.empty()) {
      throw ParseError(msg + " (effect at position " + std::to_string(name_pos) + ")", name_pos);
    }
    chain.effects.push_back(std::move(d));
  }
  return chain;
}

AudioBuffer apply_effect(const AudioBuffer& buffer, const EffectDescriptor& effect) {
  const EffectEntry* entry = find_effect(effect.name);
  if (entry == nullptr) throw InvalidArgument("unknown effect '" + effect.name + "'");
  if (effect.values.size() != entry->arity) {
    throw InvalidArgument(effect.name + " requires " + std::to_string(entry->arity) + " argument(s)");
  }
  if (auto msg = entry->check(effect.values); !msg.empty()) throw InvalidArgument(msg);
  return entry->apply(buffer, effect.values);
}

AudioBuffer apply_chain(const AudioBuffer& buffer, const EffectChain& chain) {
  AudioBuffer current = buffer;
  for (const auto& effect : chain.effects) current = apply_effect(current, effect);
  return current;
}

AudioBuffer time_stretch(const AudioBuffer& buffer, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw InvalidArgument("tempo factor must be positive");
  }
  const auto target = static_cast<std::size_t>(std::llround(buffer.frames() / factor));
  if (buffer.frames() == 0) return buffer;

  const StftConfig config = StftConfig::with(1024, 256);
  std::vector<RealVector> channels;
  for (std::size_t c = 0; c < buffer.channels(); ++c) {
    const auto spec = stft(buffer.channel(c), config, buffer.sample_rate());
    channels.push_back(istft(phase_vocoder(spec, factor), target));
  }
  return AudioBuffer(std::move(channels), buffer.sample_rate());
}

std::pair<long, long> rational_approximation(double value, long max_den) {
  if (!(value > 0.0) || !std::isfinite(value) || max_den < 1) {
    throw InvalidArgument("rational approximation needs a positive finite value");
  }
  long best_num = 0, best_den = 1;
  double best_err = std::numeric_limits<double>::infinity();
  for (long den = 1; den <= max_den; ++den) {
    const double num = std::round(value * static_cast<double>(den));
    if (num < 1.0) continue;
    const double err = std::abs(num / static_cast<double>(den) - value);
    if (err < best_err - 1e-15) {
      best_err = err;
      best_num = static_cast<long>(num);
      best_den = den;
    }
  }
  if (best_num == 0) throw InvalidArgument("value too small to approximate");
  return {best_num, best_den};
}

}  // namespace audiolab
