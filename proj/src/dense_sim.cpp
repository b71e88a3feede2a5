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

#include "qsed/dense_sim.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qsed {

namespace {

std::size_t qubits_for_dim(Eigen::Index dim) {
  if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw ArgumentError("dimension " + std::to_string(dim) +
                        " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(dim)));
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError(std::string(what) + " must lie in [0, 1], got " +
                        std::to_string(p));
  }
}

void check_match(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": " + std::to_string(a) +
                         " vs " + std::to_string(b) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  n_ = qubits_for_dim(amps_.size());
  const double norm = amps_.norm();
  if (!(norm > 0.0)) throw ArgumentError("StateVector: zero vector");
  amps_ /= norm;
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
  detail::check_dense_size(n_qubits, kDefaultMaxDenseQubits);
  Vector v = Vector::Zero(Eigen::Index{1} << n_qubits);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) {
    throw DimensionError("DensityMatrix must be square");
  }
  n_ = qubits_for_dim(data_.rows());
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
  detail::check_dense_size(n_qubits, kDefaultMaxDenseQubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix::InvariantReport DensityMatrix::invariants() const {
  InvariantReport r{};
  r.hermiticity_error = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  r.trace_error = std::abs(data_.trace() - Complex(1.0));
  const Matrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

void DensityMatrix::check_invariants() const {
  const auto r = invariants();
  if (!r.ok()) {
    throw ContractError("density matrix invariants violated: hermiticity " +
                        std::to_string(r.hermiticity_error) + ", trace " +
                        std::to_string(r.trace_error) + ", min eigenvalue " +
                        std::to_string(r.min_eigenvalue));
  }
}

std::pair<StateVector, StateVector> logical_basis(const StabilizerCode& code) {
  if (code.k() != 1) {
    throw ArgumentError("logical state preparation needs k = 1, got k = " +
                        std::to_string(code.k()));
  }
  detail::check_dense_size(code.n(), kDefaultMaxDenseQubits);
  const Eigen::Index dim = Eigen::Index{1} << code.n();
  Vector v = Vector::Zero(dim);
  v(0) = 1.0;
  // Project with every generator and with Z_L.
  auto project = [&](const PauliString& s) {
    v = 0.5 * (v + apply_left(s, v));
  };
  for (const auto& g : code.generators()) project(g);
  project(code.logical_z()[0]);
  if (v.norm() < 1e-12) {
    throw PreparationError(
        "|0...0> has no overlap with the logical |0> state of this code");
  }
  StateVector zero(v);
  StateVector one(apply_left(code.logical_x()[0], zero.amplitudes()));
  return {std::move(zero), std::move(one)};
}

StateVector prepare_logical_state(const StabilizerCode& code, double theta,
                                  double phi) {
  const auto [zero, one] = logical_basis(code);
  const Vector amps = std::cos(theta / 2) * zero.amplitudes() +
                      std::polar(std::sin(theta / 2), phi) * one.amplitudes();
  return StateVector(amps);
}

DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p) {
  check_match(rho.n_qubits(), p.n_qubits(), "apply_pauli");
  return DensityMatrix(conjugate(p, rho.matrix()));
}

StateVector apply_pauli(const StateVector& psi, const PauliString& p) {
  check_match(psi.n_qubits(), p.n_qubits(), "apply_pauli");
  return StateVector(apply_left(p, psi.amplitudes()));
}

std::array<Eigen::Matrix2cd, 4> depolarizing_kraus(double p) {
  check_probability(p, "depolarizing probability");
  std::array<Eigen::Matrix2cd, 4> k;
  const double a = std::sqrt(1.0 - p);
  const double b = std::sqrt(p / 3.0);
  k[0] = a * Eigen::Matrix2cd::Identity();
  k[1] << 0, b, b, 0;
  k[2] << 0, Complex(0, -b), Complex(0, b), 0;
  k[3] << b, 0, 0, -b;
  return k;
}

DensityMatrix depolarize_each(const DensityMatrix& rho, double p,
                              std::span<const std::size_t> qubits) {
  check_probability(p, "depolarizing probability");
  const std::size_t n = rho.n_qubits();
  Matrix cur = rho.matrix();
  for (std::size_t q : qubits) {
    if (q >= n) throw ArgumentError("depolarize_each: qubit out of range");
    if (p == 0.0) continue;
    Matrix next = (1.0 - p) * cur;
    for (char c : {'X', 'Y', 'Z'}) {
      next += (p / 3.0) * conjugate(PauliString::single(n, q, c), cur);
    }
    cur = std::move(next);
  }
  return DensityMatrix(std::move(cur));
}

DensityMatrix depolarize_all(const DensityMatrix& rho, double p) {
  std::vector<std::size_t> qubits(rho.n_qubits());
  std::iota(qubits.begin(), qubits.end(), std::size_t{0});
  return depolarize_each(rho, p, qubits);
}

DensityMatrix global_depolarize(const DensityMatrix& rho, double w) {
  check_probability(w, "global depolarizing probability");
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  return DensityMatrix((1.0 - w) * rho.matrix() +
                       (w / static_cast<double>(dim)) * Matrix::Identity(dim, dim));
}

Complex expectation(const DensityMatrix& rho, const PauliString& obs) {
  check_match(rho.n_qubits(), obs.n_qubits(), "expectation");
  return pauli_trace(rho.matrix(), obs);
}

Complex expectation(const DensityMatrix& rho, const PauliSum& obs) {
  check_match(rho.n_qubits(), obs.n_qubits(), "expectation");
  Complex acc = 0.0;
  for (const auto& t : obs.terms()) acc += t.coefficient * pauli_trace(rho.matrix(), t.op);
  return acc;
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  check_match(rho.n_qubits(), psi.n_qubits(), "fidelity");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return f.real();
}

}  // namespace qsed
