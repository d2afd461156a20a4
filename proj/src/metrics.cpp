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

#include "audiolab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "audiolab/errors.hpp"

namespace audiolab {

namespace {

constexpr double kExactMatchRatio = 1e-20;
constexpr std::size_t kMaxPitSources = 8;

RealVector zero_mean(std::span<const double> x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  RealVector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [mean](double v) { return v - mean; });
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void check_pair(std::span<const double> estimate, std::span<const double> reference) {
  if (estimate.size() != reference.size()) {
    throw InvalidArgument("estimate and reference lengths differ (" + std::to_string(estimate.size()) +
                          " vs " + std::to_string(reference.size()) + ")");
  }
  if (reference.size() < 2) throw InvalidArgument("signals need at least 2 samples");
}

Decibels energy_ratio(double signal, double residual) {
  if (signal == 0.0) return Decibels::negative_infinity();
  if (residual <= kExactMatchRatio * signal) return Decibels::positive_infinity();
  return Decibels::finite(10.0 * std::log10(signal / residual));
}

}  // namespace

Decibels Decibels::finite(double db) {
  if (!std::isfinite(db)) throw InvalidArgument("finite dB value expected");
  return Decibels(Kind::finite, db);
}

double Decibels::value() const noexcept {
  switch (kind_) {
    case Kind::pos_inf: return std::numeric_limits<double>::infinity();
    case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
    case Kind::finite: break;
  }
  return db_;
}

std::string Decibels::to_string() const {
  if (kind_ == Kind::pos_inf) return "inf";
  if (kind_ == Kind::neg_inf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", db_);
  return buf;
}

Decibels operator-(const Decibels& a, const Decibels& b) {
  if (!a.is_finite() && a.kind_ == b.kind_) return Decibels::finite(0.0);
  if (!a.is_finite()) return a;
  if (b.is_positive_infinity()) return Decibels::negative_infinity();
  if (b.is_negative_infinity()) return Decibels::positive_infinity();
  return Decibels::finite(a.db_ - b.db_);
}

Decibels si_sdr(std::span<const double> estimate, std::span<const double> reference) {
  check_pair(estimate, reference);
  const RealVector est = zero_mean(estimate);
  const RealVector ref = zero_mean(reference);
  const double ref_energy = dot(ref, ref);
  if (ref_energy == 0.0) throw InvalidArgument("reference is identically zero after mean removal");

  const double alpha = dot(est, ref) / ref_energy;
  double target = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double t = alpha * ref[i];
    target += t * t;
    residual += (est[i] - t) * (est[i] - t);
  }
  return energy_ratio(target, residual);
}

Decibels sdr(std::span<const double> estimate, std::span<const double> reference) {
  check_pair(estimate, reference);
  const RealVector est = zero_mean(estimate);
  const RealVector ref = zero_mean(reference);
  const double ref_energy = dot(ref, ref);
  if (ref_energy == 0.0) throw InvalidArgument("reference is identically zero after mean removal");
  double error = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) error += (est[i] - ref[i]) * (est[i] - ref[i]);
  return energy_ratio(ref_energy, error);
}

Decibels score(SeparationMetric metric, std::span<const double> estimate,
               std::span<const double> reference) {
  return metric == SeparationMetric::si_sdr ? si_sdr(estimate, reference) : sdr(estimate, reference);
}

Decibels mean_db(std::span<const Decibels> values) {
  if (values.empty()) throw InvalidArgument("mean of no values");
  if (std::any_of(values.begin(), values.end(), [](const Decibels& d) { return d.is_negative_infinity(); })) {
    return Decibels::negative_infinity();
  }
  if (std::any_of(values.begin(), values.end(), [](const Decibels& d) { return d.is_positive_infinity(); })) {
    return Decibels::positive_infinity();
  }
  double sum = 0.0;
  for (const auto& d : values) sum += d.value();
  return Decibels::finite(sum / static_cast<double>(values.size()));
}

PitResult pit_score(const std::vector<RealVector>& estimates, const std::vector<RealVector>& references,
                    SeparationMetric metric) {
  const std::size_t n = references.size();
  if (estimates.size() != n) throw InvalidArgument("estimate and reference counts differ");
  if (n == 0) throw InvalidArgument("no sources given");
  if (n > kMaxPitSources) {
    throw UnsupportedSize("permutation search supports at most " + std::to_string(kMaxPitSources) +
                          " sources, got " + std::to_string(n));
  }

  std::vector<Decibels> pair;
  pair.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pair.push_back(score(metric, estimates[i], references[j]));
  }

  // Ranking key: fewer -inf pairs, then more +inf pairs, then the larger
  // finite sum. A plain sentinel-aware mean would tie any assignment holding
  // one exact match with the fully exact one.
  struct Key {
    std::size_t misses = 0;
    std::size_t exact = 0;
    double sum = 0.0;
    bool better_than(const Key& o) const {
      if (misses != o.misses) return misses < o.misses;
      if (exact != o.exact) return exact > o.exact;
      return sum > o.sum;
    }
  };

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best_perm;
  Key best_key;
  do {
    Key key;
    for (std::size_t i = 0; i < n; ++i) {
      const Decibels& d = pair[i * n + perm[i]];
      if (d.is_negative_infinity()) {
        ++key.misses;
      } else if (d.is_positive_infinity()) {
        ++key.exact;
      } else {
        key.sum += d.value();
      }
    }
    if (best_perm.empty() || key.better_than(best_key)) {
      best_key = key;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Decibels> chosen;
  for (std::size_t i = 0; i < n; ++i) chosen.push_back(pair[i * n + best_perm[i]]);
  return {mean_db(chosen), best_perm};
}

SeparationScore evaluate_separation(const std::vector<RealVector>& estimates,
                                    const std::vector<RealVector>& references) {
  const auto pit = pit_score(estimates, references, SeparationMetric::si_sdr);
  std::vector<Decibels> sdrs;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    sdrs.push_back(sdr(estimates[i], references[pit.permutation[i]]));
  }
  return {pit.mean, mean_db(sdrs), pit.permutation};
}

Decibels improvement(std::span<const double> estimate, std::span<const double> reference,
                     std::span<const double> mixture, SeparationMetric metric) {
  return score(metric, estimate, reference) - score(metric, mixture, reference);
}

double mcd(const FeatureMatrix& a, const FeatureMatrix& b, bool exclude_c0) {
  if (a.data.rows() != b.data.rows()) {
    throw InvalidArgument("cepstra have different coefficient counts");
  }
  if (a.data.cols() != b.data.cols()) {
    throw InvalidArgument("cepstra have " + std::to_string(a.data.cols()) + " and " +
                          std::to_string(b.data.cols()) +
                          " frames; align them (e.g. by trimming or DTW) before computing MCD");
  }
  const std::size_t frames = a.data.cols();
  if (frames == 0) throw InvalidArgument("MCD of empty cepstra");
  const double scale = 10.0 / std::log(10.0);
  const std::size_t first = exclude_c0 ? 1 : 0;
  double total = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    double sq = 0.0;
    for (std::size_t i = first; i < a.data.rows(); ++i) {
      const double d = a.data(i, t) - b.data(i, t);
      sq += d * d;
    }
    total += scale * std::sqrt(2.0 * sq);
  }
  return total / static_cast<double>(frames);
}

}  // namespace audiolab
