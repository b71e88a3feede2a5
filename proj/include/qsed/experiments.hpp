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

// Noise sweeps and estimator runs behind the qse-decode subcommands. Each
// run returns a Table; the CLI only handles flags and file output.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsed/sampler.hpp"
#include "qsed/stabilizer_code.hpp"

namespace qsed {

enum class GridKind { log, linear };

struct SweepConfig {
  double p_min = 0.01;
  double p_max = 0.9;
  std::size_t steps = 60;
  GridKind grid = GridKind::log;
  /// Empty means 0..m (threshold sweeps) or 0..#generators (molecule).
  std::vector<std::size_t> levels;
  double theta = 2.0 * 3.14159265358979323846 / 5.0;
  double phi = 3.14159265358979323846 / 3.0;
  /// Empty means the bundled [[5,1,3]] code.
  std::string code_path;
  std::uint64_t seed = 1;
  std::size_t drop_count = 2;
  std::size_t drop_trials = 20;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;

  /// Throws ArgumentError.
  void validate() const;
};

std::vector<double> make_grid(const SweepConfig& cfg);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws ArgumentError.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
  std::string to_csv() const;
};

/// First crossing of `curve` below-to-above `reference`, found by linear
/// interpolation of log(curve) - log(reference) between grid points.
std::optional<double> find_crossover(const std::vector<double>& p,
                                     const std::vector<double>& curve,
                                     const std::vector<double>& reference);

struct SweepResult {
  Table table;
  std::optional<double> crossover;  ///< highest level vs physical
  std::size_t crossover_level = 0;
  std::vector<std::string> warnings;
};

StabilizerCode load_code_or_default(const std::string& path);

/// Columns: p, physical, bare, level_<l> for each level, then
/// star_l<l>_mean/min/max for every level whose group has more than
/// drop_count non-identity elements. All values are 1 - F_L.
SweepResult run_threshold(const SweepConfig& cfg);

/// As run_threshold, with X on every qubit before the noise and the fidelity
/// taken against X_L applied to the ideal state.
SweepResult run_transversal_x(const SweepConfig& cfg);

struct MoleculeConfig {
  SweepConfig sweep;
  /// Empty means the bundled H2 file.
  std::string hamiltonian_path;
  std::vector<std::string> generators{"ZIZI", "IZIZ", "XXXX"};
  /// Appends each point's H and S matrices at the highest level.
  std::string dump_matrices_path;
};

struct MoleculeResult {
  Table table;
  double exact_energy = 0.0;
  double peak_ratio = 0.0;
  double peak_ratio_p = 0.0;
  std::size_t peak_level = 0;
  std::vector<std::string> warnings;
};

/// Columns: p, then fid_l<l>, infid_l<l>, energy_l<l>, ratio_l<l> per level.
/// ratio = bare infidelity / corrected infidelity; nan when both vanish.
MoleculeResult run_molecule(const MoleculeConfig& cfg);

struct EstimateConfig {
  std::string code_path;
  double theta = 2.0 * 3.14159265358979323846 / 5.0;
  double phi = 3.14159265358979323846 / 3.0;
  /// Per-qubit depolarizing strength applied to the prepared state.
  double noise = 0.05;
  /// "logical-x", "logical-y", "logical-z", or a Pauli expression.
  std::string observable = "logical-z";
  /// Empty means m.
  std::optional<std::size_t> level;
  Scheme scheme = Scheme::uniform;
  std::size_t shots = 100000;
  std::uint64_t seed = 1;
  double p_weight = 0.1;
  /// "default" (code error set) or "identity".
  std::string recovery_table = "default";
};

/// Rows numerator, normalization and corrected. Columns: quantity, scheme,
/// seed, n_samples, estimate, empirical_variance, predicted_variance,
/// p_plus, standard_error, effective_sample_size, oracle. Shots are split
/// evenly between the numerator and normalization estimates.
struct EstimateResult {
  RatioEstimate ratio;
  double oracle_numerator = 0.0;
  double oracle_c = 0.0;
  double oracle_value = 0.0;
  double corrected_standard_error = 0.0;
  std::string csv;
};
EstimateResult run_estimate(const EstimateConfig& cfg);

/// Resolves the observable spelling used by EstimateConfig.
PauliSum parse_observable(const std::string& spec, const StabilizerCode& code);

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace qsed
