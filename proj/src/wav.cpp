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

#include "audiolab/wav.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "audiolab/errors.hpp"

namespace audiolab {

namespace {

constexpr std::uint16_t kTagPcm = 1;
constexpr std::uint16_t kTagFloat = 3;
constexpr std::uint16_t kTagExtensible = 0xFFFE;

// Bytes 2..15 of the KSDATAFORMAT_SUBTYPE_* GUIDs; bytes 0..1 carry the tag.
constexpr std::array<std::uint8_t, 14> kSubformatTail{0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                                      0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8(std::size_t at) const { return bytes_[at]; }
  std::uint16_t u16(std::size_t at) const {
    return static_cast<std::uint16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    return static_cast<std::uint32_t>(bytes_[at]) | (static_cast<std::uint32_t>(bytes_[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes_[at + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes_[at + 3]) << 24);
  }
  bool tag_is(std::size_t at, std::string_view tag) const {
    return std::equal(tag.begin(), tag.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(at),
                      [](char c, std::uint8_t b) { return static_cast<std::uint8_t>(c) == b; });
  }

 private:
  std::span<const std::uint8_t> bytes_;
};

struct FmtChunk {
  std::uint16_t tag;
  std::uint16_t channels;
  std::uint32_t sample_rate;
  std::uint16_t block_align;
  std::uint16_t bits;
};

FmtChunk parse_fmt(const Reader& r, std::size_t body, std::size_t size) {
  if (size < 16) throw MalformedContainer("fmt chunk shorter than 16 bytes");
  FmtChunk f{r.u16(body), r.u16(body + 2), r.u32(body + 4), r.u16(body + 12), r.u16(body + 14)};
  if (f.tag == kTagExtensible) {
    if (size < 40 || r.u16(body + 16) < 22) {
      throw MalformedContainer("WAVE_FORMAT_EXTENSIBLE fmt chunk too short");
    }
    const std::size_t guid = body + 24;
    bool known = true;
    for (std::size_t i = 0; i < kSubformatTail.size(); ++i) {
      known = known && r.u8(guid + 2 + i) == kSubformatTail[i];
    }
    if (!known) throw UnsupportedEncoding("unknown WAVE_FORMAT_EXTENSIBLE subformat");
    f.tag = r.u16(guid);
  }
  return f;
}

WavEncoding encoding_of(const FmtChunk& f) {
  if (f.tag == kTagPcm && f.bits == 16) return WavEncoding::pcm16;
  if (f.tag == kTagPcm && f.bits == 32) return WavEncoding::pcm32;
  if (f.tag == kTagFloat && f.bits == 32) return WavEncoding::float32;
  throw UnsupportedEncoding("unsupported WAV encoding: format tag " + std::to_string(f.tag) + ", " +
                            std::to_string(f.bits) + " bits");
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, std::string_view tag) {
  for (char c : tag) out.push_back(static_cast<std::uint8_t>(c));
}

std::int64_t quantize(double v, double scale, std::int64_t lo, std::int64_t hi) {
  const double clamped = std::clamp(v, -1.0, 1.0);
  const auto q = static_cast<std::int64_t>(std::round(clamped * scale));
  return std::clamp(q, lo, hi);
}

}  // namespace

std::string_view to_string(WavEncoding encoding) {
  switch (encoding) {
    case WavEncoding::pcm16: return "pcm16";
    case WavEncoding::pcm32: return "pcm32";
    case WavEncoding::float32: return "float32";
  }
  return "unknown";
}

WavEncoding encoding_from_string(std::string_view name) {
  if (name == "pcm16") return WavEncoding::pcm16;
  if (name == "pcm32") return WavEncoding::pcm32;
  if (name == "float32") return WavEncoding::float32;
  throw InvalidArgument("unknown encoding '" + std::string(name) + "'");
}

std::size_t bytes_per_sample(WavEncoding encoding) {
  return encoding == WavEncoding::pcm16 ? 2 : 4;
}

void WavFormat::validate() const {
  if (channels < 1 || channels > 64) {
    throw InvalidArgument("WAV channel count must lie in [1, 64], got " + std::to_string(channels));
  }
  if (sample_rate < 1 || sample_rate > 768000) {
    throw InvalidArgument("WAV sample rate must lie in [1, 768000], got " +
                          std::to_string(sample_rate));
  }
}

WavFile wav_read(std::span<const std::uint8_t> bytes) {
  const Reader r(bytes);
  if (bytes.size() < 12 || !r.tag_is(0, "RIFF") || !r.tag_is(8, "WAVE")) {
    throw MalformedContainer("missing RIFF/WAVE magic");
  }

  std::optional<FmtChunk> fmt;
  std::optional<std::size_t> data_offset;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::size_t size = r.u32(pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t remaining = bytes.size() - body;
    if (r.tag_is(pos, "fmt ")) {
      if (size > remaining) throw TruncatedPayload(size, remaining);
      fmt = parse_fmt(r, body, size);
    } else if (r.tag_is(pos, "data")) {
      if (size > remaining) throw TruncatedPayload(size, remaining);
      data_offset = body;
      data_size = size;
    } else if (size > remaining) {
      break;  // trailing unknown chunk cut short; nothing of ours lies past it
    }
    if (fmt && data_offset) break;
    pos = body + size + (size & 1);
  }

  if (!fmt) throw MalformedContainer("missing fmt chunk");
  if (!data_offset) throw MalformedContainer("missing data chunk");

  const WavEncoding encoding = encoding_of(*fmt);
  if (fmt->channels < 1 || fmt->channels > 64) {
    throw MalformedContainer("channel count " + std::to_string(fmt->channels) + " out of range");
  }
  if (fmt->sample_rate < 1 || fmt->sample_rate > 768000) {
    throw MalformedContainer("sample rate " + std::to_string(fmt->sample_rate) + " out of range");
  }
  const std::size_t width = bytes_per_sample(encoding);
  const std::size_t frame_bytes = width * fmt->channels;
  if (fmt->block_align != frame_bytes) {
    throw MalformedContainer("block align " + std::to_string(fmt->block_align) +
                             " inconsistent with channels and sample width");
  }
  if (data_size % frame_bytes != 0) {
    throw TruncatedPayload((data_size / frame_bytes + 1) * frame_bytes, data_size);
  }

  const std::size_t frames = data_size / frame_bytes;
  std::vector<RealVector> channels(fmt->channels, RealVector(frames));
  std::size_t at = *data_offset;
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < fmt->channels; ++c, at += width) {
      double v = 0.0;
      switch (encoding) {
        case WavEncoding::pcm16:
          v = static_cast<std::int16_t>(r.u16(at)) / 32768.0;
          break;
        case WavEncoding::pcm32:
          v = static_cast<std::int32_t>(r.u32(at)) / 2147483648.0;
          break;
        case WavEncoding::float32:
          v = std::bit_cast<float>(r.u32(at));
          if (!std::isfinite(v)) throw MalformedContainer("non-finite float sample");
          break;
      }
      channels[c][n] = v;
    }
  }

  WavFormat format{encoding, static_cast<int>(fmt->sample_rate), fmt->channels};
  return {AudioBuffer(std::move(channels), format.sample_rate), format};
}

WavFile wav_read(std::istream& in) {
  std::vector<std::uint8_t> bytes;
  char chunk[65536];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    bytes.insert(bytes.end(), chunk, chunk + in.gcount());
  }
  if (in.bad()) throw IoError("failed reading WAV stream");
  return wav_read(bytes);
}

WavFile wav_read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return wav_read(in);
}

std::vector<std::uint8_t> wav_encode(const AudioBuffer& buffer, const WavFormat& format) {
  format.validate();
  if (buffer.channels() != static_cast<std::size_t>(format.channels)) {
    throw InvalidArgument("buffer has " + std::to_string(buffer.channels()) +
                          " channels, format declares " + std::to_string(format.channels));
  }
  if (!buffer.all_finite()) throw InvalidArgument("cannot encode non-finite samples");

  const bool is_float = format.encoding == WavEncoding::float32;
  const std::size_t width = bytes_per_sample(format.encoding);
  const std::size_t data_bytes = width * buffer.channels() * buffer.frames();
  if (data_bytes > 0xFFFFFFFFull - 64) throw InvalidArgument("audio too long for a RIFF container");
  const std::size_t fmt_size = is_float ? 18 : 16;
  const std::size_t pad = data_bytes & 1;

  std::vector<std::uint8_t> out;
  out.reserve(12 + 8 + fmt_size + 8 + data_bytes + pad);
  put_tag(out, "RIFF");
  put32(out, static_cast<std::uint32_t>(4 + 8 + fmt_size + 8 + data_bytes + pad));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, static_cast<std::uint32_t>(fmt_size));
  put16(out, is_float ? kTagFloat : kTagPcm);
  put16(out, static_cast<std::uint16_t>(format.channels));
  put32(out, static_cast<std::uint32_t>(format.sample_rate));
  put32(out, static_cast<std::uint32_t>(format.sample_rate * width * format.channels));
  put16(out, static_cast<std::uint16_t>(width * format.channels));
  put16(out, static_cast<std::uint16_t>(width * 8));
  if (is_float) put16(out, 0);
  put_tag(out, "data");
  put32(out, static_cast<std::uint32_t>(data_bytes));

  for (std::size_t n = 0; n < buffer.frames(); ++n) {
    for (std::size_t c = 0; c < buffer.channels(); ++c) {
      const double v = buffer.channel(c)[n];
      switch (format.encoding) {
        case WavEncoding::pcm16:
          put16(out, static_cast<std::uint16_t>(quantize(v, 32768.0, -32768, 32767)));
          break;
        case WavEncoding::pcm32:
          put32(out, static_cast<std::uint32_t>(quantize(v, 2147483648.0, -2147483648LL, 2147483647LL)));
          break;
        case WavEncoding::float32:
          put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(std::clamp(v, -1.0, 1.0))));
          break;
      }
    }
  }
  if (pad) out.push_back(0);
  return out;
}

std::size_t wav_write(const AudioBuffer& buffer, const WavFormat& format, std::ostream& out) {
  const auto bytes = wav_encode(buffer, format);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing WAV stream");
  return bytes.size();
}

std::size_t wav_write_file(const AudioBuffer& buffer, const WavFormat& format,
                           const std::filesystem::path& path) {
  const auto bytes = wav_encode(buffer, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return bytes.size();
}

}  // namespace audiolab
