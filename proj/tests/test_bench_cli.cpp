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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "audiolab/bench.hpp"
#include "audiolab/cli.hpp"
#include "audiolab/errors.hpp"
#include "audiolab/stft.hpp"
#include "audiolab/wav.hpp"
#include "doctest.h"
#include "oracles.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

using namespace audiolab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("audiolab_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

AudioBuffer stereo_tones(std::size_t n, int rate) {
  return AudioBuffer({oracle::tone(440.0, rate, n, 0.5), oracle::tone(1234.0, rate, n, 0.25, 0.3)}, rate);
}

void write_wav(const std::string& path, const AudioBuffer& b, WavEncoding enc) {
  wav_write_file(b, WavFormat{enc, b.sample_rate(), static_cast<int>(b.channels())}, path);
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("bench_run reports the requested repetitions and trials") {
  const AudioBuffer input = white_noise(1.0, 22050, 1);
  const BenchOp ops[] = {BenchOp::spectrogram};
  BenchOptions options;
  options.repetitions[BenchOp::spectrogram] = 3;
  options.input_descriptor = "noise";
  const auto reports = bench_run(ops, options, input);
  REQUIRE(reports.size() == 1);
  const auto& r = reports[0];
  CHECK(r.op_name == "spectrogram");
  CHECK(r.repetitions_per_trial == 3);
  CHECK(r.trials == 5);
  CHECK(r.mean_seconds > 0.0);
  CHECK(r.stderr_seconds >= 0.0);
  CHECK_FALSE(r.single_trial);
  CHECK(r.input_descriptor == "noise");
}

TEST_CASE("bench defaults: five trials, 100 runs for features, 10 for phase ops") {
  const BenchOptions options;
  CHECK(options.trials == 5);
  CHECK(options.stft.n_fft == 2048);
  CHECK(options.stft.hop_length == 512);
  CHECK(options.stft.window == WindowKind::hann);
  CHECK(options.griffin_lim_iterations == 32);
  CHECK(default_repetitions(BenchOp::spectrogram) == 100);
  CHECK(default_repetitions(BenchOp::mfcc) == 100);
  CHECK(default_repetitions(BenchOp::spectral_centroid) == 100);
  CHECK(default_repetitions(BenchOp::griffin_lim) == 10);
  CHECK(default_repetitions(BenchOp::phase_vocoder) == 10);
}

TEST_CASE("single trial records zero stderr with a flag") {
  const AudioBuffer input = white_noise(0.5, 16000, 2);
  const BenchOp ops[] = {BenchOp::spectral_centroid};
  BenchOptions options;
  options.trials = 1;
  options.repetitions[BenchOp::spectral_centroid] = 2;
  const auto r = bench_run(ops, options, input).at(0);
  CHECK(r.single_trial);
  CHECK(r.stderr_seconds == 0.0);
  CHECK(r.trials == 1);
}

TEST_CASE("reports follow request order and cover every op") {
  const AudioBuffer input = white_noise(1.0, 22050, 3);
  const std::vector<BenchOp> ops = {BenchOp::phase_vocoder, BenchOp::mfcc, BenchOp::griffin_lim,
                                    BenchOp::spectrogram, BenchOp::spectral_centroid};
  BenchOptions options;
  options.trials = 2;
  for (BenchOp op : ops) options.repetitions[op] = 1;
  options.griffin_lim_iterations = 2;
  const auto reports = bench_run(ops, options, input);
  REQUIRE(reports.size() == ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    CHECK(reports[i].op_name == to_string(ops[i]));
    CHECK(reports[i].mean_seconds > 0.0);
  }
}

TEST_CASE("bench op names round-trip; bad names and zero trials are rejected") {
  for (BenchOp op : all_bench_ops()) CHECK(bench_op_from_string(to_string(op)) == op);
  CHECK_THROWS_AS(bench_op_from_string("fft"), InvalidArgument);
  const AudioBuffer input = white_noise(0.1, 8000, 0);
  const BenchOp ops[] = {BenchOp::spectrogram};
  BenchOptions options;
  options.trials = 0;
  CHECK_THROWS_AS(bench_run(ops, options, input), InvalidArgument);
}

TEST_CASE("white noise is seeded, bounded and sized") {
  const AudioBuffer a = white_noise(0.5, 16000, 9);
  const AudioBuffer b = white_noise(0.5, 16000, 9);
  const AudioBuffer c = white_noise(0.5, 16000, 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.frames() == 8000);
  CHECK(a.sample_rate() == 16000);
  for (double v : a.channel(0)) {
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("bench CSV schema") {
  std::vector<BenchReport> reports(2);
  reports[0] = {"spectrogram", 100, 5, 0.25, 0.01, false, "white_noise:60s@22050Hz:seed=0"};
  reports[1] = {"mfcc", 100, 1, 0.5, 0.0, true, "a,b"};
  std::ostringstream os;
  write_bench_csv(reports, os);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "op,reps,trials,mean_s,stderr_s,input");
  CHECK(lines[1] == "spectrogram,100,5,0.25,0.01,white_noise:60s@22050Hz:seed=0");
  CHECK(lines[2] == "mfcc,100,1,0.5,0,\"a,b\"");
  CHECK(os.str().back() == '\n');
}

TEST_CASE("bench subcommand output is schema-stable across runs") {
  const std::vector<std::string> args = {"bench", "--ops", "spectrogram,spectral_centroid", "--trials", "2",
                                         "--reps", "2", "--duration-s", "1", "--seed", "4"};
  const Run a = cli(args);
  const Run b = cli(args);
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  const auto la = lines_of(a.out);
  const auto lb = lines_of(b.out);
  REQUIRE(la.size() == 3);
  REQUIRE(lb.size() == la.size());
  CHECK(la[0] == "op,reps,trials,mean_s,stderr_s,input");
  for (std::size_t i = 0; i < la.size(); ++i) {
    const auto fa = fields(la[i]);
    const auto fb = fields(lb[i]);
    REQUIRE(fa.size() == 6);
    REQUIRE(fb.size() == 6);
    CHECK(fa[0] == fb[0]);
    CHECK(fa[1] == fb[1]);
    CHECK(fa[2] == fb[2]);
    CHECK(fa[5] == fb[5]);
  }
  CHECK(fields(la[1])[0] == "spectrogram");
  CHECK(fields(la[2])[0] == "spectral_centroid");
  CHECK(std::stod(fields(la[1])[3]) > 0.0);
  CHECK(fields(la[1])[5] == "white_noise:1s@22050Hz:seed=4");
}

TEST_CASE("bench writes CSV to a file and rejects unknown ops") {
  TempDir dir;
  const std::string path = dir / "bench.csv";
  const Run r = cli({"bench", "--ops", "spectrogram", "--trials", "5", "--reps", "1", "--duration-s", "0.5",
                     "--out", path});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto lines = lines_of(text.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "op,reps,trials,mean_s,stderr_s,input");
  CHECK(fields(lines[1])[2] == "5");

  const Run bad = cli({"bench", "--ops", "fft", "--duration-s", "0.1"});
  CHECK(bad.code == kExitNumeric);
  CHECK(bad.err.find("fft") != std::string::npos);
}

TEST_CASE("spectrogram time grows with input duration") {
  const BenchOp ops[] = {BenchOp::spectrogram};
  BenchOptions options;
  options.trials = 3;
  options.repetitions[BenchOp::spectrogram] = 5;
  const double short_t = bench_run(ops, options, white_noise(1.0, 22050, 0)).at(0).mean_seconds;
  const double long_t = bench_run(ops, options, white_noise(10.0, 22050, 0)).at(0).mean_seconds;
  CHECK(short_t > 0.0);
  CHECK(long_t >= short_t);
}

TEST_CASE("fx gain 0 is an identity pipeline") {
  TempDir dir;
  const AudioBuffer b = stereo_tones(4000, 16000);
  for (WavEncoding enc : {WavEncoding::pcm16, WavEncoding::pcm32, WavEncoding::float32}) {
    CAPTURE(to_string(enc));
    const std::string in = dir / "in.wav";
    const std::string out = dir / "out.wav";
    write_wav(in, b, enc);
    const Run r = cli({"fx", in, out, "gain", "0"});
    REQUIRE(r.code == kExitOk);
    const WavFile a = wav_read_file(in);
    const WavFile c = wav_read_file(out);
    CHECK(c.format == a.format);
    CHECK(c.buffer == a.buffer);
    const double tol = enc == WavEncoding::pcm16 ? 1.0 / 32768 : 1e-7;
    for (std::size_t ch = 0; ch < b.channels(); ++ch) {
      for (std::size_t i = 0; i < b.frames(); ++i) {
        CHECK(std::abs(c.buffer.channel(ch)[i] - b.channel(ch)[i]) <= tol);
      }
    }
  }
}

TEST_CASE("fx applies a chain with negative arguments") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  const std::string out = dir / "out.wav";
  write_wav(in, stereo_tones(16000, 16000), WavEncoding::float32);
  const Run r = cli({"fx", in, out, "gain", "-6", "trim", "0.25", "0.5", "pitch", "-100"});
  REQUIRE(r.code == kExitOk);
  const WavFile f = wav_read_file(out);
  CHECK(f.buffer.frames() == 8000);
  CHECK(f.format.encoding == WavEncoding::float32);

  CHECK(cli({"fx", in, out, "rate", "8000"}).code == kExitOk);
  CHECK(wav_read_file(out).format.sample_rate == 8000);
}

TEST_CASE("info prints the stream parameters") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  write_wav(in, stereo_tones(8000, 16000), WavEncoding::pcm16);
  const Run r = cli({"info", in});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("sample_rate: 16000") != std::string::npos);
  CHECK(r.out.find("channels: 2") != std::string::npos);
  CHECK(r.out.find("encoding: pcm16") != std::string::npos);
  CHECK(r.out.find("duration_s: 0.5") != std::string::npos);
}

TEST_CASE("convert re-encodes and resamples") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  const std::string out = dir / "out.wav";
  write_wav(in, stereo_tones(16000, 16000), WavEncoding::pcm16);
  REQUIRE(cli({"convert", in, out, "--encoding", "float32", "--rate", "8000"}).code == kExitOk);
  const WavFile f = wav_read_file(out);
  CHECK(f.format.encoding == WavEncoding::float32);
  CHECK(f.format.sample_rate == 8000);
  CHECK(f.buffer.frames() == 8000);
  CHECK(f.buffer.channels() == 2);

  REQUIRE(cli({"convert", in, out}).code == kExitOk);
  const WavFile round = wav_read_file(out);
  const WavFile orig = wav_read_file(in);
  CHECK(round.format == orig.format);
  CHECK(round.buffer == orig.buffer);
}

TEST_CASE("features writes coefficient-by-frame CSV") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  write_wav(in, stereo_tones(16000, 16000), WavEncoding::float32);
  const std::size_t frames = stft_frame_count(16000, StftConfig::with(512, 128, WindowKind::hann));

  struct Case {
    std::string op;
    std::size_t rows;
  };
  for (const Case& c : {Case{"mfcc", 13}, Case{"melspec", 40}, Case{"centroid", 1}, Case{"spectrogram", 257}}) {
    CAPTURE(c.op);
    const std::string csv = dir / (c.op + ".csv");
    const Run r = cli({"features", in, "--op", c.op, "--n-fft", "512", "--hop", "128", "--n-mels", "40",
                       "--n-mfcc", "13", "--out", csv});
    REQUIRE(r.code == kExitOk);
    std::ifstream f(csv);
    std::stringstream text;
    text << f.rdbuf();
    const auto lines = lines_of(text.str());
    REQUIRE(lines.size() == c.rows + 1);
    CHECK(fields(lines[0]).front() == "frame_0");
    for (const auto& line : lines) CHECK(fields(line).size() == frames);
  }
}

TEST_CASE("metrics subcommands") {
  TempDir dir;
  const AudioBuffer ref = stereo_tones(8000, 16000);
  std::mt19937_64 rng(5);
  const auto noise = oracle::random_signal(rng, 8000, 0.1);
  RealVector mix(8000);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = ref.channel(0)[i] + ref.channel(1)[i] + noise[i];
  RealVector a(ref.channel(0).begin(), ref.channel(0).end());
  RealVector b(ref.channel(1).begin(), ref.channel(1).end());
  const AudioBuffer swapped({b, a}, 16000);
  write_wav(dir / "ref.wav", ref, WavEncoding::float32);
  write_wav(dir / "est.wav", swapped, WavEncoding::float32);
  write_wav(dir / "mix.wav", AudioBuffer::mono(mix, 16000), WavEncoding::float32);

  const Run si = cli({"metrics", "si-sdr", dir / "est.wav", dir / "ref.wav"});
  REQUIRE(si.code == kExitOk);
  CHECK(si.out.find("si_sdr_db: inf") != std::string::npos);
  CHECK(si.out.find("permutation: 1 0") != std::string::npos);

  const Run imp = cli({"metrics", "sdri", dir / "est.wav", dir / "ref.wav", dir / "mix.wav"});
  REQUIRE(imp.code == kExitOk);
  CHECK(imp.out.find("si_sdri_db: inf") != std::string::npos);
  CHECK(imp.out.find("sdri_db: inf") != std::string::npos);

  const Run self = cli({"metrics", "sdri", dir / "ref.wav", dir / "ref.wav", dir / "ref.wav"});
  REQUIRE(self.code == kExitOk);
  CHECK(self.out.find("si_sdri_db: 0\n") != std::string::npos);

  const std::string csv = dir / "c.csv";
  REQUIRE(cli({"features", dir / "ref.wav", "--op", "mfcc", "--n-fft", "512", "--hop", "128", "--n-mels", "40", "--out", csv})
              .code == kExitOk);
  const Run m = cli({"metrics", "mcd", csv, csv, "--exclude-c0"});
  REQUIRE(m.code == kExitOk);
  CHECK(m.out == "mcd_db: 0\n");
}

TEST_CASE("mcd reads hand-written CSVs") {
  TempDir dir;
  {
    std::ofstream(dir / "a.csv") << "frame_0,frame_1\n1,1\n";
    std::ofstream(dir / "b.csv") << "frame_0,frame_1\n0,0\n";
    std::ofstream(dir / "ragged.csv") << "frame_0,frame_1\n1,1\n2\n";
    std::ofstream(dir / "text.csv") << "frame_0\nabc\n";
  }
  const Run r = cli({"metrics", "mcd", dir / "a.csv", dir / "b.csv"});
  REQUIRE(r.code == kExitOk);
  const double expected = 10.0 / std::log(10.0) * std::sqrt(2.0);
  CHECK(std::stod(r.out.substr(r.out.find(':') + 1)) == doctest::Approx(expected).epsilon(1e-8));
  CHECK(cli({"metrics", "mcd", dir / "a.csv", dir / "ragged.csv"}).code == kExitIo);
  CHECK(cli({"metrics", "mcd", dir / "a.csv", dir / "text.csv"}).code == kExitIo);
  CHECK(cli({"metrics", "mcd", dir / "a.csv", dir / "missing.csv"}).code == kExitIo);
}

TEST_CASE("usage errors exit 2 before any I/O") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  const std::string out = dir / "out.wav";
  write_wav(in, stereo_tones(1000, 8000), WavEncoding::pcm16);

  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"info"}).code == kExitUsage);
  CHECK(cli({"info", in, "--verbose"}).code == kExitUsage);
  CHECK(cli({"convert", in, out, "--encoding", "pcm8"}).code == kExitUsage);
  CHECK(cli({"features", in, "--op", "chroma", "--out", "-"}).code == kExitUsage);
  CHECK(cli({"bench", "--trials", "0"}).code == kExitUsage);
  CHECK(cli({"metrics"}).code == kExitUsage);
  CHECK(cli({"fx", in, out, "gain", "0", "--bogus"}).code == kExitUsage);
  CHECK(cli({"fx", in, out, "reverb", "0.5"}).code == kExitUsage);
  CHECK(cli({"fx", in, out, "gain"}).code == kExitUsage);
  CHECK(cli({"fx", dir / "missing.wav", out, "gain", "x"}).code == kExitUsage);
  CHECK_FALSE(fs::exists(out));

  const Run help = cli({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("bench") != std::string::npos);
}

TEST_CASE("I/O and format errors exit 3 and name the path") {
  TempDir dir;
  const std::string missing = dir / "missing.wav";
  const Run r = cli({"info", missing});
  CHECK(r.code == kExitIo);
  CHECK(r.err.find(missing) != std::string::npos);

  const std::string junk = dir / "junk.wav";
  write_bytes(junk, {'R', 'I', 'F', 'F', 1, 2, 3});
  const Run j = cli({"convert", junk, dir / "out.wav"});
  CHECK(j.code == kExitIo);
  CHECK(j.err.find(junk) != std::string::npos);

  const std::string in = dir / "in.wav";
  write_wav(in, stereo_tones(1000, 8000), WavEncoding::pcm16);
  CHECK(cli({"convert", in, dir / "no/such/dir/out.wav"}).code == kExitIo);
  CHECK(cli({"features", in, "--op", "mfcc", "--out", dir / "no/such/dir/x.csv"}).code == kExitIo);
}

TEST_CASE("numeric and domain errors exit 4") {
  TempDir dir;
  const std::string in = dir / "in.wav";
  const std::string other = dir / "other.wav";
  write_wav(in, stereo_tones(1000, 8000), WavEncoding::pcm16);
  write_wav(other, stereo_tones(900, 8000), WavEncoding::pcm16);
  CHECK(cli({"metrics", "si-sdr", in, other}).code == kExitNumeric);
  CHECK(cli({"features", in, "--op", "mfcc", "--n-fft", "1000", "--out", "-"}).code == kExitNumeric);
  CHECK(cli({"features", in, "--op", "mfcc", "--channel", "5", "--out", "-"}).code == kExitNumeric);
  CHECK(cli({"features", in, "--op", "melspec", "--n-fft", "64", "--n-mels", "128", "--out", "-"}).code ==
        kExitNumeric);
  CHECK(cli({"fx", in, dir / "o.wav", "speed", "0"}).code == kExitUsage);
  CHECK(cli({"convert", in, dir / "o.wav", "--rate", "8000"}).code == kExitOk);
}

TEST_CASE("random bytes never crash info or convert") {
  TempDir dir;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 512);
  const std::string path = dir / "fuzz.wav";
  const std::vector<std::uint8_t> header = {'R', 'I', 'F', 'F', 0, 0, 0, 0, 'W', 'A', 'V', 'E'};
  for (int i = 0; i < 300; ++i) {
    std::vector<std::uint8_t> bytes;
    if (i % 2) bytes = header;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) bytes.push_back(static_cast<std::uint8_t>(byte(rng)));
    write_bytes(path, bytes);
    CHECK(cli({"info", path}).code == kExitIo);
    CHECK(cli({"convert", path, dir / "out.wav"}).code == kExitIo);
  }
}

#if defined(AUDIOLAB_CLI_PATH) && (defined(__unix__) || defined(__APPLE__))
TEST_CASE("installed binary maps errors to process exit codes") {
  TempDir dir;
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string("\"") + AUDIOLAB_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("--help") == 0);
  CHECK(run("nope") == 2);
  CHECK(run("info \"" + (dir / "missing.wav") + "\"") == 3);
}
#endif
