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
#include <string_view>

#include "audiolab/audio_buffer.hpp"

namespace audiolab {

enum class WindowKind { hann, hamming, rectangular };

std::string_view to_string(WindowKind kind);
// Accepts "hann", "hamming", "rectangular" (alias "rect").
WindowKind window_from_string(std::string_view name);

// Periodic windows divide by `length`, symmetric ones by `length - 1`.
RealVector make_window(WindowKind kind, std::size_t length, bool periodic = true);

}  // namespace audiolab
