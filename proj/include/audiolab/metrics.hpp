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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "audiolab/audio_buffer.hpp"
#include "audiolab/features.hpp"

namespace audiolab {

// A level in dB that may be an exact-match (+inf) or no-match (-inf)
// sentinel. Sentinels print as "inf" / "-inf".
class Decibels {
 public:
  static Decibels finite(double db);
  static Decibels positive_infinity() { return Decibels(Kind::pos_inf, 0.0); }
  static Decibels negative_infinity() { return Decibels(Kind::neg_inf, 0.0); }

  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_positive_infinity() const noexcept { return kind_ == Kind::pos_inf; }
  bool is_negative_infinity() const noexcept { return kind_ == Kind::neg_inf; }

  // IEEE infinities for the sentinels.
  double value() const noexcept;
  std::string to_string() const;

  // Differences of equal sentinels are 0 dB.
  friend Decibels operator-(const Decibels& a, const Decibels& b);
  friend bool operator==(const Decibels& a, const Decibels& b) = default;
  friend std::partial_ordering operator<=>(const Decibels& a, const Decibels& b) {
    return a.value() <=> b.value();
  }

 private:
  enum class Kind { finite, pos_inf, neg_inf };
  Decibels(Kind kind, double db) : kind_(kind), db_(db) {}

  Kind kind_;
  double db_;
};

// Both signals are zero-meaned first. Residual energy below 1e-20 of the
// signal energy (beyond 200 dB) counts as an exact match.
Decibels si_sdr(std::span<const double> estimate, std::span<const double> reference);
Decibels sdr(std::span<const double> estimate, std::span<const double> reference);

enum class SeparationMetric { si_sdr, sdr };

Decibels score(SeparationMetric metric, std::span<const double> estimate,
               std::span<const double> reference);

// Mean over sources; any -inf makes the mean -inf, otherwise any +inf makes
// it +inf.
Decibels mean_db(std::span<const Decibels> values);

struct PitResult {
  Decibels mean;
  std::vector<std::size_t> permutation;  // estimate index -> reference index
};

// Exhaustive search over all n! assignments (n <= 8) maximizing the mean
// metric. Sentinel pairs rank first by fewest -inf, then most +inf. Ties keep
// the lexicographically smallest permutation.
PitResult pit_score(const std::vector<RealVector>& estimates, const std::vector<RealVector>& references,
                    SeparationMetric metric);

struct SeparationScore {
  Decibels si_sdr_db;
  Decibels sdr_db;
  std::vector<std::size_t> permutation;
};

// PIT by Si-SDR; SDR is reported under the same assignment.
SeparationScore evaluate_separation(const std::vector<RealVector>& estimates,
                                    const std::vector<RealVector>& references);

// metric(estimate, reference) - metric(mixture, reference).
Decibels improvement(std::span<const double> estimate, std::span<const double> reference,
                     std::span<const double> mixture, SeparationMetric metric);

// Frame-averaged mel cepstral distortion of two frame-aligned cepstra
// [coefficients x frames].
double mcd(const FeatureMatrix& a, const FeatureMatrix& b, bool exclude_c0);

}  // namespace audiolab
