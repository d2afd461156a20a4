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

#include "audiolab/window.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "audiolab/errors.hpp"

namespace audiolab {

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::hann: return "hann";
    case WindowKind::hamming: return "hamming";
    case WindowKind::rectangular: return "rectangular";
  }
  return "unknown";
}

WindowKind window_from_string(std::string_view name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "hamming") return WindowKind::hamming;
  if (name == "rectangular" || name == "rect") return WindowKind::rectangular;
  throw InvalidArgument("unknown window '" + std::string(name) + "'");
}

RealVector make_window(WindowKind kind, std::size_t length, bool periodic) {
  if (length == 0) throw InvalidArgument("window length must be at least 1");
  RealVector w(length, 1.0);
  if (kind == WindowKind::rectangular) return w;

  const std::size_t denom = periodic ? length : length - 1;
  if (denom == 0) return w;  // symmetric window of length 1

  const double a0 = kind == WindowKind::hann ? 0.5 : 0.54;
  const double a1 = 1.0 - a0;
  for (std::size_t n = 0; n < length; ++n) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(denom);
    w[n] = a0 - a1 * std::cos(phase);
  }
  return w;
}

}  // namespace audiolab
