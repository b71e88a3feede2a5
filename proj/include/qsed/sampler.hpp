// Copyright 2026 The qse-decode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stochastic estimation of projected (and recovered) expectation values.
//
// An observable is written as Gamma = g * sum_j gamma_j Gamma_j with
// gamma_j >= 0, sum_j gamma_j = 1 and signs carried by the Pauli Gamma_j.
// Each shot draws a Pauli term of the expanded correction, simulates a
// single +-1 measurement of it on rho, and records g * (likelihood ratio)
// * outcome. The sample mean is unbiased for the unnormalized numerator
// Tr[P rho P Gamma]; with Gamma = I it estimates the normalization c.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsed/dense_sim.hpp"
#include "qsed/stabilizer_code.hpp"

namespace qsed {

struct SamplingDecomposition {
  struct Term {
    double gamma;
    PauliString op;  ///< Hermitian; phase +-1 carries the coefficient sign
  };
  double gamma_tilde = 0.0;
  std::vector<Term> terms;

  /// gamma_tilde * sum_j gamma_j op_j.
  PauliSum reconstruct() const;
};

/// Throws ContractError for non-Hermitian input and ArgumentError for the
/// zero operator.
SamplingDecomposition decompose_for_sampling(const PauliSum& obs);

/// Seedable, splittable generator. A stream is identified by
/// (seed, stream index); streams with different indices are independent.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next() { return engine_(); }
  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  ShotRng split(std::uint64_t stream) const { return ShotRng(seed_, stream); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// One simulated measurement of a Hermitian Pauli: +1 with probability
/// (1 + Tr[rho P]) / 2.
int sample_pauli_outcome(const DensityMatrix& rho, const PauliString& p, ShotRng& rng);

enum class Scheme { uniform, importance, recovery };
std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct EstimatorReport {
  double estimate = 0.0;
  std::size_t sample_count = 0;
  /// Per-shot variance on the binomial scale: a +-g outcome is recoded as
  /// {0, g}, so a single Pauli term gives g^2 p(1 - p). Equals a quarter of
  /// the sample variance of the recorded per-shot values.
  double empirical_variance = 0.0;
  /// Exact per-shot variance on the same scale from the sampling plan.
  std::optional<double> predicted_variance;
  /// Exact probability of a +1 outcome under the sampling plan.
  std::optional<double> p_plus;
  Scheme scheme = Scheme::uniform;
  std::uint64_t seed = 0;
  /// sqrt(sample variance of per-shot values / N).
  double standard_error = 0.0;
  /// (sum w)^2 / sum w^2 over the drawn likelihood ratios.
  std::optional<double> effective_sample_size;
};

/// Header `scheme,seed,n_samples,estimate,empirical_variance,predicted_variance,p_plus`.
std::string report_csv_header();
std::string to_csv_row(const EstimatorReport& r);

/// Discrete distribution over measurable Pauli terms.
struct SamplingPlan {
  struct Entry {
    std::size_t chi = 0;     ///< group element index
    std::size_t term = 0;    ///< decomposition term j
    std::size_t alpha = 0;   ///< syndrome-table entry (recovery only)
    double probability = 0;  ///< p_{chi,j(,alpha)}
    double weight = 0;       ///< value recorded per +1 outcome
    PauliString measured;    ///< Hermitian Pauli measured on rho
    double expectation = 0;  ///< Tr[rho * measured]
  };
  Scheme scheme = Scheme::uniform;
  double gamma_tilde = 0.0;
  std::vector<Entry> entries;

  /// Exact mean of the recorded value.
  double exact_mean() const;
  double exact_p_plus() const;
  /// Exact per-shot variance on the binomial scale (see EstimatorReport).
  double exact_binomial_variance() const;

  EstimatorReport run(std::size_t n_samples, std::uint64_t seed,
                      std::uint64_t stream = 0) const;
};

SamplingPlan uniform_plan(const DensityMatrix& rho, const StabilizerCode& code,
                          std::size_t l, const PauliSum& obs);
SamplingPlan importance_plan(const DensityMatrix& rho, const StabilizerCode& code,
                             std::size_t l, const PauliSum& obs, double p_weight);
SamplingPlan recovery_plan(const DensityMatrix& rho, const StabilizerCode& code,
                           const PauliSum& obs, const SyndromeTable& table,
                           const std::vector<double>& b);

EstimatorReport uniform_estimator(const DensityMatrix& rho, const StabilizerCode& code,
                                  std::size_t l, const PauliSum& obs,
                                  std::size_t n_samples, std::uint64_t seed);
EstimatorReport importance_estimator(const DensityMatrix& rho,
                                     const StabilizerCode& code, std::size_t l,
                                     const PauliSum& obs, std::size_t n_samples,
                                     std::uint64_t seed, double p_weight);
EstimatorReport recovery_estimator(const DensityMatrix& rho, const StabilizerCode& code,
                                   const PauliSum& obs, const SyndromeTable& table,
                                   const std::vector<double>& b, std::size_t n_samples,
                                   std::uint64_t seed);

/// Corrected value as the ratio of two independent estimates (numerator on
/// stream 0, normalization with Gamma = I on stream 1), each with half of
/// the shot budget. The ratio carries an O(1/N) bias.
struct RatioEstimate {
  EstimatorReport numerator;
  EstimatorReport normalization;
  double value = 0.0;
};
RatioEstimate estimate_corrected_value(const SamplingPlan& numerator_plan,
                                       const SamplingPlan& normalization_plan,
                                       std::size_t n_samples, std::uint64_t seed);

}  // namespace qsed
