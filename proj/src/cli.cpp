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

#include "audiolab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>

#include "CLI11.hpp"
#include "audiolab/bench.hpp"
#include "audiolab/effects.hpp"
#include "audiolab/errors.hpp"
#include "audiolab/features.hpp"
#include "audiolab/filtering.hpp"
#include "audiolab/metrics.hpp"
#include "audiolab/wav.hpp"

namespace audiolab {

namespace {

// Carries an exit code and a message that already names the offending path.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitNumeric;
}

WavFile load_wav(const std::string& path) {
  try {
    return wav_read_file(path);
  } catch (const IoError& e) {
    throw Failure{kExitIo, e.what()};
  } catch (const Error& e) {
    throw Failure{kExitIo, "'" + path + "': " + e.what()};
  }
}

void save_wav(const AudioBuffer& buffer, const WavFormat& format, const std::string& path) {
  try {
    wav_write_file(buffer, format, path);
  } catch (const IoError& e) {
    throw Failure{kExitIo, e.what()};
  }
}

// Writes to `path`, or standard output for "-".
template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Failure{kExitIo, "cannot open '" + path + "' for writing"};
  fn(file);
  file.flush();
  if (!file) throw Failure{kExitIo, "failed writing '" + path + "'"};
}

std::string g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_matrix_csv(const Matrix& m, std::ostream& os) {
  for (std::size_t t = 0; t < m.cols(); ++t) os << (t ? "," : "") << "frame_" << t;
  os << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t t = 0; t < m.cols(); ++t) os << (t ? "," : "") << g9(m(r, t));
    os << '\n';
  }
}

// Reads a feature CSV as written by `features`: one header row, then one row
// per coefficient.
Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot open '" + path + "' for reading"};
  auto fail = [&](const std::string& why) { return Failure{kExitIo, "'" + path + "': " + why}; };
  std::string line;
  if (!std::getline(in, line)) throw fail("empty CSV file");
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      while (first < last && *first == ' ') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw fail("row " + std::to_string(rows + 2) + ": invalid number '" +
                   line.substr(pos, end - pos) + "'");
      }
      values.push_back(v);
      ++count;
      if (end == line.size()) break;
      pos = end + 1;
    }
    if (rows == 0) cols = count;
    if (count != cols) throw fail("ragged CSV row " + std::to_string(rows + 2));
    ++rows;
  }
  if (rows == 0) throw fail("no data rows");
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.flat().begin());
  return m;
}

std::vector<RealVector> channels_of(const AudioBuffer& b) {
  std::vector<RealVector> out;
  for (std::size_t c = 0; c < b.channels(); ++c) {
    const auto ch = b.channel(c);
    out.emplace_back(ch.begin(), ch.end());
  }
  return out;
}

std::string join_permutation(const std::vector<std::size_t>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

// ---- subcommands ----

struct InfoArgs {
  std::string input;
};

void run_info(const InfoArgs& a, std::ostream& out) {
  const WavFile f = load_wav(a.input);
  out << "path: " << a.input << '\n'
      << "sample_rate: " << f.format.sample_rate << '\n'
      << "channels: " << f.format.channels << '\n'
      << "encoding: " << to_string(f.format.encoding) << '\n'
      << "frames: " << f.buffer.frames() << '\n'
      << "duration_s: " << g9(f.buffer.duration_seconds()) << '\n';
}

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string encoding;
  int rate = 0;
};

void run_convert(const ConvertArgs& a) {
  const WavFile f = load_wav(a.input);
  WavFormat format = f.format;
  if (!a.encoding.empty()) format.encoding = encoding_from_string(a.encoding);
  AudioBuffer buffer = f.buffer;
  if (a.rate > 0 && a.rate != buffer.sample_rate()) buffer = resample(buffer, a.rate);
  format.sample_rate = buffer.sample_rate();
  save_wav(buffer, format, a.output);
}

struct FxArgs {
  std::string input;
  std::string output;
  std::vector<std::string> tokens;
};

void run_fx(const FxArgs& a) {
  // Parse before touching the filesystem so syntax errors never do I/O.
  const EffectChain chain = parse_chain(a.tokens);
  const WavFile f = load_wav(a.input);
  const AudioBuffer result = apply_chain(f.buffer, chain);
  WavFormat format = f.format;
  format.sample_rate = result.sample_rate();
  save_wav(result, format, a.output);
}

struct FeaturesArgs {
  std::string input;
  std::string op;
  std::string output;
  std::size_t n_fft = 2048;
  std::size_t hop = 512;
  std::size_t n_mels = 128;
  std::size_t n_mfcc = 40;
  std::size_t channel = 0;
};

void run_features(const FeaturesArgs& a, std::ostream& out) {
  const StftConfig config = StftConfig::with(a.n_fft, a.hop, WindowKind::hann);
  config.validate();
  const WavFile f = load_wav(a.input);
  if (a.channel >= f.buffer.channels()) {
    throw InvalidArgument("channel " + std::to_string(a.channel) + " out of range for '" + a.input + "'");
  }
  const auto x = f.buffer.channel(a.channel);
  const int sr = f.buffer.sample_rate();
  MelParams mel;
  mel.n_mels = a.n_mels;

  Matrix m;
  if (a.op == "spectrogram") {
    m = spectrogram(x, sr, config);
  } else if (a.op == "melspec") {
    m = mel_spectrogram(x, sr, config, mel).data;
  } else if (a.op == "mfcc") {
    m = mfcc(x, sr, config, mel, a.n_mfcc).data;
  } else {
    const RealVector c = spectral_centroid(x, sr, config);
    m = Matrix(1, c.size());
    std::copy(c.begin(), c.end(), m.flat().begin());
  }
  with_output(a.output, out, [&](std::ostream& os) { write_matrix_csv(m, os); });
}

struct BenchArgs {
  std::vector<std::string> ops;
  std::size_t trials = 5;
  std::size_t reps = 0;  // 0 keeps the per-op defaults
  std::string output = "-";
  double duration_s = 60.0;
  int rate = 22050;
  std::uint64_t seed = 0;
};

void run_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<BenchOp> ops;
  for (const auto& name : a.ops) ops.push_back(bench_op_from_string(name));
  if (ops.empty()) ops = all_bench_ops();
  BenchOptions options;
  options.trials = a.trials;
  if (a.reps > 0) {
    for (BenchOp op : ops) options.repetitions[op] = a.reps;
  }
  options.input_descriptor = "white_noise:" + g9(a.duration_s) + "s@" + std::to_string(a.rate) +
                             "Hz:seed=" + std::to_string(a.seed);
  const AudioBuffer input = white_noise(a.duration_s, a.rate, a.seed);
  const auto reports = bench_run(ops, options, input);
  with_output(a.output, out, [&](std::ostream& os) { write_bench_csv(reports, os); });
}

struct MetricsArgs {
  std::string estimate;
  std::string reference;
  std::string mixture;
  std::string csv_a;
  std::string csv_b;
  bool exclude_c0 = false;
};

void require_same_shape(const AudioBuffer& est, const AudioBuffer& ref) {
  if (est.channels() != ref.channels()) {
    throw InvalidArgument("estimate has " + std::to_string(est.channels()) +
                          " channels but reference has " + std::to_string(ref.channels()));
  }
}

void run_si_sdr(const MetricsArgs& a, std::ostream& out) {
  const WavFile est = load_wav(a.estimate);
  const WavFile ref = load_wav(a.reference);
  require_same_shape(est.buffer, ref.buffer);
  const SeparationScore s = evaluate_separation(channels_of(est.buffer), channels_of(ref.buffer));
  out << "si_sdr_db: " << s.si_sdr_db.to_string() << '\n';
  if (s.permutation.size() > 1) out << "permutation: " << join_permutation(s.permutation) << '\n';
}

void run_sdri(const MetricsArgs& a, std::ostream& out) {
  const WavFile est = load_wav(a.estimate);
  const WavFile ref = load_wav(a.reference);
  const WavFile mix = load_wav(a.mixture);
  require_same_shape(est.buffer, ref.buffer);
  const std::size_t n = ref.buffer.channels();
  if (mix.buffer.channels() != 1 && mix.buffer.channels() != n) {
    throw InvalidArgument("mixture must be mono or match the reference channel count");
  }
  const auto refs = channels_of(ref.buffer);
  const PitResult pit = pit_score(channels_of(est.buffer), refs, SeparationMetric::si_sdr);
  std::vector<Decibels> si;
  std::vector<Decibels> plain;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = pit.permutation[i];
    const auto e = est.buffer.channel(i);
    const auto m = mix.buffer.channel(mix.buffer.channels() == 1 ? 0 : r);
    si.push_back(improvement(e, refs[r], m, SeparationMetric::si_sdr));
    plain.push_back(improvement(e, refs[r], m, SeparationMetric::sdr));
  }
  out << "si_sdri_db: " << mean_db(si).to_string() << '\n'
      << "sdri_db: " << mean_db(plain).to_string() << '\n';
  if (n > 1) out << "permutation: " << join_permutation(pit.permutation) << '\n';
}

void run_mcd(const MetricsArgs& a, std::ostream& out) {
  const FeatureMatrix x{read_matrix_csv(a.csv_a), 0.0};
  const FeatureMatrix y{read_matrix_csv(a.csv_b), 0.0};
  const double d = mcd(x, y, a.exclude_c0);
  out << "mcd_db: " << g9(d) << '\n';
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"audiolab: audio DSP toolkit", "audiolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "audiolab 0.1.0");

  InfoArgs info;
  auto* info_cmd = app.add_subcommand("info", "Print sample rate, channels, encoding and duration");
  info_cmd->add_option("input", info.input, "WAV file")->required();

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "Re-encode and optionally resample a WAV file");
  convert_cmd->add_option("input", convert.input, "Source WAV file")->required();
  convert_cmd->add_option("output", convert.output, "Destination WAV file")->required();
  convert_cmd->add_option("--encoding", convert.encoding, "pcm16, pcm32 or float32 (default: keep)")
      ->check(CLI::IsMember({"pcm16", "pcm32", "float32"}));
  convert_cmd->add_option("--rate", convert.rate, "Output sample rate in Hz")->check(CLI::Range(1, 768000));

  FxArgs fx;
  auto* fx_cmd = app.add_subcommand("fx", "Apply an effect chain, e.g. gain -3 speed 1.1 trim 0 2");
  fx_cmd->add_option("input", fx.input, "Source WAV file")->required();
  fx_cmd->add_option("output", fx.output, "Destination WAV file")->required();
  fx_cmd->add_option("effects", fx.tokens, "Effect chain tokens");
  std::string effect_list;
  for (const auto& e : registered_effects()) effect_list += "\n  " + std::string(e.usage);
  fx_cmd->footer("Effects:" + effect_list);

  FeaturesArgs features;
  auto* features_cmd = app.add_subcommand("features", "Compute a feature matrix and write it as CSV");
  features_cmd->add_option("input", features.input, "WAV file")->required();
  features_cmd->add_option("--op", features.op, "mfcc, melspec, centroid or spectrogram")
      ->required()
      ->check(CLI::IsMember({"mfcc", "melspec", "centroid", "spectrogram"}));
  features_cmd->add_option("--n-fft", features.n_fft, "FFT size")->capture_default_str();
  features_cmd->add_option("--hop", features.hop, "Hop length")->capture_default_str();
  features_cmd->add_option("--n-mels", features.n_mels, "Mel bands")->capture_default_str();
  features_cmd->add_option("--n-mfcc", features.n_mfcc, "Cepstral coefficients")->capture_default_str();
  features_cmd->add_option("--channel", features.channel, "Channel to analyse")->capture_default_str();
  features_cmd->add_option("--out", features.output, "CSV path, or - for standard output")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the feature and phase ops on seeded white noise");
  bench_cmd->add_option("--ops", bench.ops, "Comma-separated ops (default: all)")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Timed trials per op")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench.reps, "Executions per trial for every op (default: 100 or 10)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.output, "CSV path, or - for standard output")->capture_default_str();
  bench_cmd->add_option("--duration-s", bench.duration_s, "Input length in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--rate", bench.rate, "Input sample rate in Hz")
      ->capture_default_str()
      ->check(CLI::Range(1, 768000));
  bench_cmd->add_option("--seed", bench.seed, "Noise seed")->capture_default_str();

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Separation and synthesis metrics");
  metrics_cmd->require_subcommand(1);
  auto* si_cmd = metrics_cmd->add_subcommand("si-sdr", "Si-SDR of an estimate; channels are sources (PIT)");
  si_cmd->add_option("estimate", metrics.estimate, "Estimated sources WAV")->required();
  si_cmd->add_option("reference", metrics.reference, "Reference sources WAV")->required();
  auto* sdri_cmd = metrics_cmd->add_subcommand("sdri", "Si-SDR and SDR improvement over the mixture");
  sdri_cmd->add_option("estimate", metrics.estimate, "Estimated sources WAV")->required();
  sdri_cmd->add_option("reference", metrics.reference, "Reference sources WAV")->required();
  sdri_cmd->add_option("mixture", metrics.mixture, "Mixture WAV (mono or one channel per source)")
      ->required();
  auto* mcd_cmd = metrics_cmd->add_subcommand("mcd", "Mel cepstral distortion of two cepstrum CSVs");
  mcd_cmd->add_option("a", metrics.csv_a, "First cepstrum CSV")->required();
  mcd_cmd->add_option("b", metrics.csv_b, "Second cepstrum CSV")->required();
  mcd_cmd->add_flag("--exclude-c0", metrics.exclude_c0, "Skip the energy coefficient c0");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (info_cmd->parsed()) {
      run_info(info, out);
    } else if (convert_cmd->parsed()) {
      run_convert(convert);
    } else if (fx_cmd->parsed()) {
      run_fx(fx);
    } else if (features_cmd->parsed()) {
      run_features(features, out);
    } else if (bench_cmd->parsed()) {
      run_bench(bench, out);
    } else if (si_cmd->parsed()) {
      run_si_sdr(metrics, out);
    } else if (sdri_cmd->parsed()) {
      run_sdri(metrics, out);
    } else if (mcd_cmd->parsed()) {
      run_mcd(metrics, out);
    }
  } catch (const Failure& f) {
    err << "audiolab: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "audiolab: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::bad_alloc&) {
    err << "audiolab: out of memory\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "audiolab: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace audiolab
