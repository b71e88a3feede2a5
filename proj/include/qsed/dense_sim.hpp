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

#pragma once

#include <array>
#include <span>

#include "qsed/pauli.hpp"
#include "qsed/stabilizer_code.hpp"

namespace qsed {

/// Unit-norm pure state on n qubits.
class StateVector {
 public:
  /// Normalizes `amplitudes`; throws ArgumentError on zero norm or a
  /// non-power-of-two length.
  explicit StateVector(Vector amplitudes);

  static StateVector basis(std::size_t n_qubits, std::uint64_t index);

  std::size_t n_qubits() const { return n_; }
  const Vector& amplitudes() const { return amps_; }

 private:
  std::size_t n_ = 0;
  Vector amps_;
};

/// Dense density matrix. Construction does not validate; call
/// `check_invariants` where the caller wants it enforced.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Matrix data);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
  const Matrix& matrix() const { return data_; }

  struct InvariantReport {
    double hermiticity_error;  // max |rho - rho^dagger| element
    double trace_error;        // |Tr rho - 1|
    double min_eigenvalue;
    bool ok(double herm_tol = 1e-10, double trace_tol = 1e-10,
            double psd_tol = -1e-9) const {
      return hermiticity_error <= herm_tol && trace_error <= trace_tol &&
             min_eigenvalue >= psd_tol;
    }
  };
  InvariantReport invariants() const;
  /// Throws ContractError when `invariants().ok()` fails.
  void check_invariants() const;

 private:
  std::size_t n_ = 0;
  Matrix data_;
};

/// cos(theta/2)|0_L> + e^{i phi} sin(theta/2)|1_L> for a k = 1 code.
/// |0_L> is the normalized code-space projection of |0...0> (restricted to
/// the +1 eigenspace of Z_L); |1_L> = X_L |0_L>.
StateVector prepare_logical_state(const StabilizerCode& code, double theta,
                                  double phi);
/// Logical basis pair (|0_L>, |1_L>).
std::pair<StateVector, StateVector> logical_basis(const StabilizerCode& code);

/// P rho P^dagger.
DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p);
StateVector apply_pauli(const StateVector& psi, const PauliString& p);

/// Kraus operators {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
std::array<Eigen::Matrix2cd, 4> depolarizing_kraus(double p);

/// Single-qubit depolarizing channel with strength p applied to every listed
/// qubit in list order. Totally mixing at p = 3/4.
DensityMatrix depolarize_each(const DensityMatrix& rho, double p,
                              std::span<const std::size_t> qubits);
/// Same channel on every qubit.
DensityMatrix depolarize_all(const DensityMatrix& rho, double p);

/// (1 - w) rho + w I / 2^n.
DensityMatrix global_depolarize(const DensityMatrix& rho, double w);

/// Tr[rho obs].
Complex expectation(const DensityMatrix& rho, const PauliSum& obs);
Complex expectation(const DensityMatrix& rho, const PauliString& obs);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

}  // namespace qsed
