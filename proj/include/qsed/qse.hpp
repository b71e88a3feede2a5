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

// Quantum subspace expansion over Pauli expansion operators.
//
// A relaxed projector P_c = sum_i c_i M_i is chosen to minimize
// Tr[P_c rho P_c^dagger H] subject to Tr[P_c rho P_c^dagger] = 1. With
//   H_ij = Tr[M_i^dagger H M_j rho],  S_ij = Tr[M_i^dagger M_j rho]
// the optimum is the ground solution of H C = S C E, solved here by
// canonical diagonalization: S is diagonalized, directions with eigenvalue
// below epsilon * max(eig S) are dropped, and H is diagonalized in the
// whitened basis that remains.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qsed/dense_sim.hpp"
#include "qsed/stabilizer_code.hpp"

namespace qsed {

/// Relative cut on the overlap spectrum.
inline constexpr double kDefaultOverlapCut = 1e-10;

struct QseProblem {
  std::vector<PauliString> expansion_ops;
  PauliSum target;
  DensityMatrix state;
};

struct QseMatrices {
  Matrix h;
  Matrix s;
  /// True when every expansion operator commuted with the target and the
  /// single-product form Tr[H M_i^dagger M_j rho] was used.
  bool reduced = false;
};

struct QseSolution {
  Matrix h_matrix;
  Matrix s_matrix;
  std::size_t retained_rank = 0;
  /// Retained generalized eigenvalues, ascending.
  Eigen::VectorXd eigenvalues;
  /// Matching S-orthonormal eigenvectors in the original operator basis.
  Matrix eigenvectors;
  /// Ground coefficient vector, normalized to c^dagger S c = 1.
  Vector coefficients;
  double ground_energy = 0.0;
  /// 1 / |sum_i c_i|^2: equals Tr[P rho] when the solution is the uniform
  /// projector P = 2^{-l} sum_i M_i over a full group.
  double c_norm = 0.0;
};

QseMatrices build_qse_matrices(const QseProblem& problem);

/// Throws EmptySubspaceError when no direction survives the cut and
/// ArgumentError unless 0 < epsilon < 1.
QseSolution canonical_solve(const Matrix& h, const Matrix& s,
                            double epsilon = kDefaultOverlapCut);

/// sum_i c_i M_i as a dense matrix.
Matrix relaxed_projector(std::span<const PauliString> ops, const Vector& coefficients);

struct QseCorrection {
  QseSolution solution;
  DensityMatrix corrected_state;
};

/// Ground solution and P_c rho P_c^dagger / Tr[P_c rho P_c^dagger].
QseCorrection qse_correct(const QseProblem& problem,
                          double epsilon = kDefaultOverlapCut);

/// -sum_{i<l} S_i over the first l generators; its ground space inside the
/// level-l expansion is the level-l projected space.
PauliSum code_hamiltonian(const StabilizerCode& code, std::size_t l);
PauliSum code_hamiltonian(const StabilizerCode& code);

/// Substitutes X -> X_L, Z -> Z_L, Y -> i X_L Z_L qubit by qubit.
PauliSum encode_logical(const PauliSum& op_k, const StabilizerCode& code);

/// {I} followed by X_L, Y_L, Z_L for each logical qubit.
std::vector<PauliString> logical_operator_basis(const StabilizerCode& code);

struct TwoStageResult {
  double energy = 0.0;
  DensityMatrix corrected_state;
  /// Retained stage-2 eigenvalues, ascending (ground first).
  Eigen::VectorXd spectrum;
  QseSolution stage1;
  std::optional<QseSolution> stage2;
};

/// Stage 1 corrects rho over `check_ops` against the code Hamiltonian.
/// Stage 2 expands the corrected state over `logical_ops` and diagonalizes
/// `problem_h_logical` there. With no logical operators stage 2 reduces to
/// Tr[rho' H_p].
TwoStageResult two_stage_logical_qse(const DensityMatrix& rho,
                                     const StabilizerCode& code,
                                     const PauliSum& problem_h_logical,
                                     std::span<const PauliString> check_ops,
                                     std::span<const PauliString> logical_ops,
                                     double epsilon = kDefaultOverlapCut);

/// Splits `expansion` into stabilizer-group elements and everything else.
TwoStageResult two_stage_logical_qse(const DensityMatrix& rho,
                                     const StabilizerCode& code,
                                     const PauliSum& problem_h_logical,
                                     std::span<const PauliString> expansion,
                                     double epsilon = kDefaultOverlapCut);

struct SymmetryQseResult {
  double energy = 0.0;
  DensityMatrix corrected_state;
  std::optional<double> fidelity;
  QseSolution solution;
};

/// QSE over the level-l hierarchy generated by (possibly approximate)
/// symmetry generators, with the problem Hamiltonian as target.
SymmetryQseResult symmetry_qse(const DensityMatrix& rho,
                               std::span<const PauliString> generators,
                               const PauliSum& problem_h, std::size_t l,
                               const StateVector* reference = nullptr,
                               double epsilon = kDefaultOverlapCut);

}  // namespace qsed
