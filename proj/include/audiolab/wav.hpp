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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "audiolab/audio_buffer.hpp"

namespace audiolab {

enum class WavEncoding { pcm16, pcm32, float32 };

std::string_view to_string(WavEncoding encoding);
WavEncoding encoding_from_string(std::string_view name);
std::size_t bytes_per_sample(WavEncoding encoding);

struct WavFormat {
  WavEncoding encoding = WavEncoding::pcm16;
  int sample_rate = 16000;
  int channels = 1;

  // channels in [1, 64], sample_rate in [1, 768000].
  void validate() const;
  bool operator==(const WavFormat&) const = default;
};

struct WavFile {
  AudioBuffer buffer;
  WavFormat format;
};

// Parses a RIFF/WAVE byte stream. Integer samples are scaled by 1/32768
// (pcm16) or 1/2147483648 (pcm32). Accepts fmt tags 1, 3 and
// WAVE_FORMAT_EXTENSIBLE wrapping either; unknown chunks are skipped.
WavFile wav_read(std::span<const std::uint8_t> bytes);
WavFile wav_read(std::istream& in);
WavFile wav_read_file(const std::filesystem::path& path);

// Canonical encoding: 44-byte header for PCM, 46 bytes for float (fmt with a
// zero-length extension). Samples are clamped to [-1, 1] and integer
// encodings round half away from zero.
std::vector<std::uint8_t> wav_encode(const AudioBuffer& buffer, const WavFormat& format);
std::size_t wav_write(const AudioBuffer& buffer, const WavFormat& format, std::ostream& out);
std::size_t wav_write_file(const AudioBuffer& buffer, const WavFormat& format,
                           const std::filesystem::path& path);

}  // namespace audiolab
