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

// Exact post-processing corrections by stabilizer projection, with and
// without recovery. These are the reference decoders and the oracle for the
// stochastic estimators.

#pragma once

#include <optional>

#include "qsed/dense_sim.hpp"
#include "qsed/stabilizer_code.hpp"

namespace qsed {

/// Below this normalization the corrected ratio is reported as undefined.
inline constexpr double kDefaultSupportCutoff = 1e-12;

struct CorrectionResult {
  double value = 0.0;      ///< corrected <Gamma> = numerator / c
  double numerator = 0.0;  ///< unnormalized Tr[corrected-state * Gamma]
  double c = 0.0;          ///< weight of rho inside the kept space
  std::optional<DensityMatrix> corrected_state;
};

struct CorrectionOptions {
  double support_cutoff = kDefaultSupportCutoff;
  bool materialize_state = false;
  /// Use Tr[M_i Gamma_j M_k rho] for every pair instead of requiring Gamma
  /// to commute with the group.
  bool two_sided = false;
};

/// (1/2^l) sum of hierarchy_group(code, l), as a dense matrix.
Matrix code_projector(const StabilizerCode& code, std::size_t l);

/// prod_j (I + (-1)^{s_j} S_j) / 2 over all m generators.
Matrix error_projector(const StabilizerCode& code, const Syndrome& s);

/// Projected expectation Tr[P rho P Gamma] / Tr[P rho] with P the level-l
/// projector. Gamma must be Hermitian and commute with every group element
/// unless `two_sided` is set. Throws NoSupportError when c < cutoff.
CorrectionResult corrected_expectation(const DensityMatrix& rho,
                                       const PauliSum& gamma,
                                       const StabilizerCode& code, std::size_t l,
                                       const CorrectionOptions& opts = {});

/// P rho P / Tr[P rho] at level l together with c.
CorrectionResult project_state(const DensityMatrix& rho, const StabilizerCode& code,
                               std::size_t l,
                               double support_cutoff = kDefaultSupportCutoff);

/// Recovery-augmented correction over every table entry:
///   value = (1/c) sum_i Tr[R_i P_i rho P_i R_i^dagger Gamma],
///   c     = sum_i Tr[P_i rho].
CorrectionResult recovery_corrected_expectation(const DensityMatrix& rho,
                                                const PauliSum& gamma,
                                                const StabilizerCode& code,
                                                const SyndromeTable& table,
                                                const CorrectionOptions& opts = {});

/// sum_i R_i P_i rho P_i R_i^dagger / c, with c.
CorrectionResult recover_state(const DensityMatrix& rho, const StabilizerCode& code,
                               const SyndromeTable& table,
                               double support_cutoff = kDefaultSupportCutoff);

}  // namespace qsed
