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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "audiolab/errors.hpp"
#include "audiolab/wav.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace audiolab;
using Bytes = std::vector<std::uint8_t>;

namespace {

void tag(Bytes& b, const char* t) { b.insert(b.end(), t, t + 4); }
void u16(Bytes& b, std::uint16_t v) {
  b.push_back(v & 0xFF);
  b.push_back(v >> 8);
}
void u32(Bytes& b, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) b.push_back((v >> s) & 0xFF);
}

// Header for a PCM/float file, with the RIFF size computed from `data_bytes`.
Bytes header(std::uint16_t fmt_tag, std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
             std::uint32_t data_bytes) {
  Bytes b;
  tag(b, "RIFF");
  u32(b, 36 + data_bytes);
  tag(b, "WAVE");
  tag(b, "fmt ");
  u32(b, 16);
  u16(b, fmt_tag);
  u16(b, channels);
  u32(b, rate);
  u32(b, rate * channels * bits / 8);
  u16(b, channels * bits / 8);
  u16(b, bits);
  tag(b, "data");
  u32(b, data_bytes);
  return b;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("audiolab_test_" + name);
}

}  // namespace

TEST_CASE("reads a hand-built pcm16 file") {
  Bytes b = header(1, 1, 8000, 16, 6);
  REQUIRE(b.size() == 44);
  for (std::int16_t s : {std::int16_t{0}, std::int16_t{16384}, std::int16_t{-16384}}) {
    u16(b, static_cast<std::uint16_t>(s));
  }
  const auto wav = wav_read(b);
  CHECK(wav.format == WavFormat{WavEncoding::pcm16, 8000, 1});
  REQUIRE(wav.buffer.frames() == 3);
  CHECK(wav.buffer.channel(0)[0] == 0.0);
  CHECK(wav.buffer.channel(0)[1] == doctest::Approx(0.5).epsilon(1.0 / 32768));
  CHECK(wav.buffer.channel(0)[2] == doctest::Approx(-0.5).epsilon(1.0 / 32768));
}

TEST_CASE("de-interleaves stereo pcm32") {
  Bytes b = header(1, 2, 44100, 32, 16);
  for (std::int32_t s : {1 << 30, -(1 << 30), 0, std::numeric_limits<std::int32_t>::min()}) {
    u32(b, static_cast<std::uint32_t>(s));
  }
  const auto wav = wav_read(b);
  CHECK(wav.format.encoding == WavEncoding::pcm32);
  CHECK(wav.buffer.channel(0)[0] == 0.5);
  CHECK(wav.buffer.channel(1)[0] == -0.5);
  CHECK(wav.buffer.channel(0)[1] == 0.0);
  CHECK(wav.buffer.channel(1)[1] == -1.0);
}

TEST_CASE("container errors are typed") {
  Bytes b = header(1, 1, 8000, 16, 2);
  u16(b, 0);
  Bytes rifx = b;
  std::memcpy(rifx.data(), "RIFX", 4);
  CHECK_THROWS_AS(wav_read(rifx), MalformedContainer);
  CHECK_THROWS_AS(wav_read(Bytes{}), MalformedContainer);

  Bytes truncated = header(1, 1, 8000, 16, 100);
  u16(truncated, 1);
  try {
    wav_read(truncated);
    FAIL("expected TruncatedPayload");
  } catch (const TruncatedPayload& e) {
    CHECK(e.expected() == 100);
    CHECK(e.found() == 2);
  }

  Bytes no_data;
  tag(no_data, "RIFF");
  u32(no_data, 28);
  tag(no_data, "WAVE");
  no_data.insert(no_data.end(), b.begin() + 12, b.begin() + 36);
  CHECK_THROWS_AS(wav_read(no_data), MalformedContainer);

  Bytes no_fmt;
  tag(no_fmt, "RIFF");
  u32(no_fmt, 14);
  tag(no_fmt, "WAVE");
  tag(no_fmt, "data");
  u32(no_fmt, 2);
  u16(no_fmt, 0);
  CHECK_THROWS_AS(wav_read(no_fmt), MalformedContainer);

  Bytes eight_bit = header(1, 1, 8000, 8, 2);
  u16(eight_bit, 0);
  CHECK_THROWS_AS(wav_read(eight_bit), UnsupportedEncoding);
  Bytes alaw = header(6, 1, 8000, 16, 2);
  u16(alaw, 0);
  CHECK_THROWS_AS(wav_read(alaw), UnsupportedEncoding);

  Bytes partial_frame = header(1, 2, 8000, 16, 2);
  u16(partial_frame, 0);
  CHECK_THROWS_AS(wav_read(partial_frame), TruncatedPayload);
}

TEST_CASE("skips unknown chunks and honours odd padding") {
  Bytes b;
  tag(b, "RIFF");
  u32(b, 0);
  tag(b, "WAVE");
  tag(b, "LIST");
  u32(b, 3);
  b.insert(b.end(), {'a', 'b', 'c', 0});  // odd chunk + pad byte
  const Bytes base = header(3, 1, 16000, 32, 4);
  b.insert(b.end(), base.begin() + 12, base.end());
  u32(b, std::bit_cast<std::uint32_t>(0.25f));
  const auto wav = wav_read(b);
  CHECK(wav.format.encoding == WavEncoding::float32);
  CHECK(wav.buffer.channel(0)[0] == 0.25);
}

TEST_CASE("reads WAVE_FORMAT_EXTENSIBLE") {
  Bytes b;
  tag(b, "RIFF");
  u32(b, 0);
  tag(b, "WAVE");
  tag(b, "fmt ");
  u32(b, 40);
  u16(b, 0xFFFE);
  u16(b, 1);
  u32(b, 48000);
  u32(b, 48000 * 4);
  u16(b, 4);
  u16(b, 32);
  u16(b, 22);
  u16(b, 32);
  u32(b, 0x4);
  const std::uint8_t guid[16] = {0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10, 0x00,
                                 0x80, 0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
  b.insert(b.end(), guid, guid + 16);
  tag(b, "data");
  u32(b, 4);
  u32(b, std::bit_cast<std::uint32_t>(-0.75f));
  const auto wav = wav_read(b);
  CHECK(wav.format.encoding == WavEncoding::float32);
  CHECK(wav.buffer.channel(0)[0] == -0.75);

  b[44 + 10] ^= 0xFF;  // corrupt the GUID tail
  CHECK_THROWS_AS(wav_read(b), UnsupportedEncoding);
}

TEST_CASE("writer produces canonical headers") {
  const auto second = AudioBuffer::silence(1, 8000, 8000);
  const auto bytes = wav_encode(second, {WavEncoding::pcm16, 8000, 1});
  CHECK(bytes.size() == 16044);
  CHECK(bytes[40] + (bytes[41] << 8) + (bytes[42] << 16) == 16000);

  const auto empty = AudioBuffer::silence(2, 0, 8000);
  const auto e = wav_encode(empty, {WavEncoding::pcm16, 8000, 2});
  CHECK(e.size() == 44);
  const auto back = wav_read(e);
  CHECK(back.buffer.frames() == 0);
  CHECK(back.buffer.channels() == 2);

  const auto f = wav_encode(AudioBuffer::mono({0.5}, 8000), {WavEncoding::float32, 8000, 1});
  CHECK(f.size() == 46 + 4);
  CHECK(f[20] == 3);
  CHECK(f[16] == 18);
}

TEST_CASE("writer clamps and rounds") {
  const auto buf = AudioBuffer::mono({1.5, -1.5, 1.0, -1.0, 0.5 / 32768.0, -0.5 / 32768.0}, 8000);
  const auto bytes = wav_encode(buf, {WavEncoding::pcm16, 8000, 1});
  auto sample = [&](std::size_t i) {
    return static_cast<std::int16_t>(bytes[44 + 2 * i] | (bytes[45 + 2 * i] << 8));
  };
  CHECK(sample(0) == 32767);
  CHECK(sample(1) == -32768);
  CHECK(sample(2) == 32767);
  CHECK(sample(3) == -32768);
  CHECK(sample(4) == 1);
  CHECK(sample(5) == -1);
}

TEST_CASE("writer argument errors") {
  const auto stereo = AudioBuffer::silence(2, 10, 8000);
  CHECK_THROWS_AS(wav_encode(stereo, {WavEncoding::pcm16, 8000, 1}), InvalidArgument);
  CHECK_THROWS_AS(wav_encode(AudioBuffer::silence(1, 1, 8000), {WavEncoding::pcm16, 0, 1}),
                  InvalidArgument);
  CHECK_THROWS_AS(wav_write_file(stereo, {WavEncoding::pcm16, 8000, 2}, "/nonexistent-dir/x.wav"),
                  IoError);
  CHECK_THROWS_AS(wav_read_file("/nonexistent-dir/x.wav"), IoError);
}

TEST_CASE("round trips within encoding tolerance") {
  std::mt19937_64 rng(50);
  std::vector<RealVector> chans;
  for (int c = 0; c < 3; ++c) {
    auto x = oracle::random_signal(rng, 1001);
    for (auto& v : x) v = static_cast<float>(v);
    chans.push_back(x);
  }
  const AudioBuffer buf(chans, 22050);

  const auto f = wav_read(wav_encode(buf, {WavEncoding::float32, 22050, 3}));
  CHECK(f.buffer == buf);

  for (auto [enc, tol] : {std::pair{WavEncoding::pcm16, 1.0 / 32768}, std::pair{WavEncoding::pcm32, 1.0 / 2147483648.0}}) {
    const auto back = wav_read(wav_encode(buf, {enc, 22050, 3})).buffer;
    CHECK(back.sample_rate() == 22050);
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < buf.frames(); ++i) {
        CHECK(std::abs(back.channel(c)[i] - buf.channel(c)[i]) <= tol);
      }
    }
  }

  const auto path = temp_path("roundtrip.wav");
  CHECK(wav_write_file(buf, {WavEncoding::float32, 22050, 3}, path) == 46 + 1001 * 12);
  CHECK(wav_read_file(path).buffer == buf);
  std::stringstream ss;
  wav_write(buf, {WavEncoding::pcm16, 22050, 3}, ss);
  CHECK(wav_read(ss).buffer.frames() == 1001);
  std::filesystem::remove(path);
}

TEST_CASE("fuzzed inputs only raise typed errors") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> len(0, 4096);
  const Bytes valid = wav_encode(AudioBuffer::mono(oracle::random_signal(rng, 64), 8000),
                                 {WavEncoding::pcm16, 8000, 1});
  int parsed = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Bytes b;
    if (trial % 2 == 0) {
      b.resize(len(rng));
      for (auto& v : b) v = static_cast<std::uint8_t>(byte(rng));
    } else {
      b = valid;
      const int flips = 1 + trial % 8;
      for (int i = 0; i < flips; ++i) b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)] = byte(rng);
      b.resize(std::uniform_int_distribution<std::size_t>(0, b.size())(rng));
    }
    try {
      const auto w = wav_read(b);
      CHECK(w.buffer.all_finite());
      ++parsed;
    } catch (const FormatError&) {
    }
  }
  CHECK(parsed > 0);
}
