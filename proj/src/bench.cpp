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

#include "audiolab/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <ostream>
#include <random>

#include "audiolab/errors.hpp"
#include "audiolab/features.hpp"
#include "audiolab/phase.hpp"

namespace audiolab {

namespace {

struct OpName {
  BenchOp op;
  std::string_view name;
};

constexpr OpName kOpNames[] = {
    {BenchOp::spectrogram, "spectrogram"},
    {BenchOp::mfcc, "mfcc"},
    {BenchOp::spectral_centroid, "spectral_centroid"},
    {BenchOp::griffin_lim, "griffin_lim"},
    {BenchOp::phase_vocoder, "phase_vocoder"},
};

// Keeps results observable so the timed calls cannot be elided.
volatile double g_sink = 0.0;

std::function<void()> make_task(BenchOp op, const BenchOptions& options, std::span<const double> x,
                                int rate) {
  const StftConfig& sc = options.stft;
  switch (op) {
    case BenchOp::spectrogram:
      return [&sc, x, rate] { g_sink = spectrogram(x, rate, sc)(0, 0); };
    case BenchOp::mfcc: {
      MelParams mel;
      mel.n_mels = options.n_mels;
      const std::size_t n_mfcc = options.n_mfcc;
      return [&sc, x, rate, mel, n_mfcc] { g_sink = mfcc(x, rate, sc, mel, n_mfcc).data(0, 0); };
    }
    case BenchOp::spectral_centroid:
      return [&sc, x, rate] { g_sink = spectral_centroid(x, rate, sc).front(); };
    case BenchOp::griffin_lim: {
      auto magnitude = std::make_shared<Matrix>(complex_norm(stft(x, sc, rate), 1.0));
      GriffinLimConfig cfg;
      cfg.stft = sc;
      cfg.n_iter = options.griffin_lim_iterations;
      return [magnitude, cfg, rate] { g_sink = griffin_lim(*magnitude, cfg, rate).channel(0)[0]; };
    }
    case BenchOp::phase_vocoder: {
      auto spec = std::make_shared<ComplexSpectrogram>(stft(x, sc, rate));
      const double stretch = options.vocoder_rate;
      return [spec, stretch] { g_sink = phase_vocoder(*spec, stretch)(0, 0).real(); };
    }
  }
  throw InvalidArgument("unknown benchmark op");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string_view to_string(BenchOp op) {
  for (const auto& n : kOpNames) {
    if (n.op == op) return n.name;
  }
  return "unknown";
}

BenchOp bench_op_from_string(std::string_view name) {
  for (const auto& n : kOpNames) {
    if (n.name == name) return n.op;
  }
  throw InvalidArgument("unknown benchmark op '" + std::string(name) +
                        "' (expected spectrogram, mfcc, spectral_centroid, griffin_lim, phase_vocoder)");
}

std::vector<BenchOp> all_bench_ops() {
  std::vector<BenchOp> out;
  for (const auto& n : kOpNames) out.push_back(n.op);
  return out;
}

std::size_t default_repetitions(BenchOp op) {
  return op == BenchOp::griffin_lim || op == BenchOp::phase_vocoder ? 10 : 100;
}

std::vector<BenchReport> bench_run(std::span<const BenchOp> ops, const BenchOptions& options,
                                   const AudioBuffer& input) {
  if (options.trials < 1) throw InvalidArgument("benchmark needs at least one trial");
  options.stft.validate();
  using Clock = std::chrono::steady_clock;
  static_assert(Clock::is_steady);

  const auto x = input.channel(0);
  std::vector<BenchReport> reports;
  for (BenchOp op : ops) {
    const auto it = options.repetitions.find(op);
    const std::size_t reps = it != options.repetitions.end() ? it->second : default_repetitions(op);
    if (reps < 1) throw InvalidArgument("repetitions must be at least 1");
    const auto task = make_task(op, options, x, input.sample_rate());

    task();  // warmup
    std::vector<double> times;
    for (std::size_t t = 0; t < options.trials; ++t) {
      const auto start = Clock::now();
      for (std::size_t r = 0; r < reps; ++r) task();
      times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    }

    BenchReport report;
    report.op_name = std::string(to_string(op));
    report.repetitions_per_trial = reps;
    report.trials = options.trials;
    report.input_descriptor = options.input_descriptor;
    double sum = 0.0;
    for (double t : times) sum += t;
    report.mean_seconds = sum / static_cast<double>(times.size());
    if (times.size() < 2) {
      report.single_trial = true;
    } else {
      double ss = 0.0;
      for (double t : times) ss += (t - report.mean_seconds) * (t - report.mean_seconds);
      const double sd = std::sqrt(ss / static_cast<double>(times.size() - 1));
      report.stderr_seconds = sd / std::sqrt(static_cast<double>(times.size()));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_bench_csv(std::span<const BenchReport> reports, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : reports) {
    out << csv_field(r.op_name) << ',' << r.repetitions_per_trial << ',' << r.trials << ','
        << number(r.mean_seconds) << ',' << number(r.stderr_seconds) << ','
        << csv_field(r.input_descriptor) << '\n';
  }
}

AudioBuffer white_noise(double seconds, int sample_rate, std::uint64_t seed) {
  if (!(seconds >= 0.0) || sample_rate <= 0) throw InvalidArgument("invalid noise duration or rate");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealVector x(static_cast<std::size_t>(std::llround(seconds * sample_rate)));
  for (auto& v : x) v = u(rng);
  return AudioBuffer::mono(std::move(x), sample_rate);
}

}  // namespace audiolab
