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
#include <string>
#include <string_view>
#include <vector>

#include "audiolab/audio_buffer.hpp"

namespace audiolab {

struct EffectDescriptor {
  std::string name;
  std::vector<std::string> args;  // verbatim tokens
  std::vector<double> values;     // parsed and range-checked

  bool operator==(const EffectDescriptor&) const = default;
};

// Applied left to right; the empty chain is the identity.
struct EffectChain {
  std::vector<EffectDescriptor> effects;

  EffectChain operator+(const EffectChain& tail) const;
  bool empty() const noexcept { return effects.empty(); }
};

struct EffectInfo {
  std::string_view name;
  std::size_t arity;
  std::string_view usage;
};

// Registered effects, in registry order.
std::vector<EffectInfo> registered_effects();

// Greedy parse: each effect name consumes its declared number of numeric
// arguments. Throws ParseError carrying the index of the offending token.
EffectChain parse_chain(std::span<const std::string> tokens);

AudioBuffer apply_effect(const AudioBuffer& buffer, const EffectDescriptor& effect);
AudioBuffer apply_chain(const AudioBuffer& buffer, const EffectChain& chain);

// Time-stretch by `factor` (> 1 shortens) with the phase vocoder, pitch kept.
AudioBuffer time_stretch(const AudioBuffer& buffer, double factor);

// Best rational approximation num/den of `value` with den <= max_den.
std::pair<long, long> rational_approximation(double value, long max_den);

}  // namespace audiolab
