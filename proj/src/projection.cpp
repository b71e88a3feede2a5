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

#include "qsed/projection.hpp"

#include <cmath>

namespace qsed {

namespace {

void check_support(double c, double cutoff) {
  if (!(c >= cutoff)) {
    throw NoSupportError("state has no support in the projected space (c = " +
                         std::to_string(c) + ")");
  }
}

void check_register(const DensityMatrix& rho, const StabilizerCode& code) {
  if (rho.n_qubits() != code.n()) {
    throw DimensionError("state acts on " + std::to_string(rho.n_qubits()) +
                         " qubits, code on " + std::to_string(code.n()));
  }
}

void check_gamma(const PauliSum& gamma, const StabilizerCode& code) {
  if (gamma.n_qubits() != code.n()) {
    throw DimensionError("observable acts on " + std::to_string(gamma.n_qubits()) +
                         " qubits, code on " + std::to_string(code.n()));
  }
  if (!gamma.is_hermitian()) throw ContractError("observable is not Hermitian");
}

Matrix identity_for(const StabilizerCode& code) {
  detail::check_dense_size(code.n(), kDefaultMaxDenseQubits);
  const Eigen::Index dim = Eigen::Index{1} << code.n();
  return Matrix::Identity(dim, dim);
}

}  // namespace

Matrix code_projector(const StabilizerCode& code, std::size_t l) {
  if (l > code.m()) {
    throw ArgumentError("level " + std::to_string(l) + " exceeds m = " +
                        std::to_string(code.m()));
  }
  Matrix p = identity_for(code);
  for (std::size_t i = 0; i < l; ++i) {
    p = 0.5 * (p + apply_left(code.generators()[i], p));
  }
  return p;
}

Matrix error_projector(const StabilizerCode& code, const Syndrome& s) {
  if (s.length != code.m()) {
    throw ArgumentError("syndrome has length " + std::to_string(s.length) +
                        ", code has m = " + std::to_string(code.m()));
  }
  Matrix p = identity_for(code);
  for (std::size_t j = 0; j < code.m(); ++j) {
    const PauliString g = s[j] ? code.generators()[j].negated() : code.generators()[j];
    p = 0.5 * (p + apply_left(g, p));
  }
  return p;
}

CorrectionResult corrected_expectation(const DensityMatrix& rho,
                                       const PauliSum& gamma,
                                       const StabilizerCode& code, std::size_t l,
                                       const CorrectionOptions& opts) {
  check_register(rho, code);
  check_gamma(gamma, code);
  const auto group = hierarchy_group(code, l);
  const double scale = 1.0 / static_cast<double>(group.size());

  if (!opts.two_sided) {
    for (const auto& t : gamma.terms()) {
      for (const auto& m : group) {
        if (!commutes(t.op, m)) {
          throw ContractError("observable term " + t.op.str() +
                              " anticommutes with group element " + m.str());
        }
      }
    }
  }

  CorrectionResult r;
  double c = 0.0;
  for (const auto& m : group) c += pauli_trace(rho.matrix(), m).real();
  r.c = c * scale;
  check_support(r.c, opts.support_cutoff);

  Complex num = 0.0;
  if (!opts.two_sided) {
    // Tr[P rho P Gamma] = (1/2^l) sum_{j,k} gamma_j Tr[rho Gamma_j M_k]
    for (const auto& t : gamma.terms()) {
      for (const auto& m : group) {
        num += t.coefficient * pauli_trace(rho.matrix(), multiply(t.op, m));
      }
    }
    num *= scale;
  } else {
    // (1/2^{2l}) sum_{i,j,k} gamma_j Tr[rho M_i Gamma_j M_k]
    for (const auto& t : gamma.terms()) {
      for (const auto& mi : group) {
        const PauliString left = multiply(mi, t.op);
        for (const auto& mk : group) {
          num += t.coefficient * pauli_trace(rho.matrix(), multiply(left, mk));
        }
      }
    }
    num *= scale * scale;
  }
  r.numerator = num.real();
  r.value = r.numerator / r.c;
  if (opts.materialize_state) {
    const Matrix p = code_projector(code, l);
    r.corrected_state = DensityMatrix(p * rho.matrix() * p / r.c);
  }
  return r;
}

CorrectionResult project_state(const DensityMatrix& rho, const StabilizerCode& code,
                               std::size_t l, double support_cutoff) {
  check_register(rho, code);
  const Matrix p = code_projector(code, l);
  const Matrix projected = p * rho.matrix() * p;
  CorrectionResult r;
  r.c = projected.trace().real();
  check_support(r.c, support_cutoff);
  r.value = 1.0;
  r.numerator = r.c;
  r.corrected_state = DensityMatrix(projected / r.c);
  return r;
}

namespace {

/// sum_i R_i P_i rho P_i R_i^dagger (unnormalized) and c = sum_i Tr[P_i rho].
std::pair<Matrix, double> recovered(const DensityMatrix& rho, const StabilizerCode& code,
                                    const SyndromeTable& table) {
  if (table.m() != code.m()) {
    throw ArgumentError("syndrome table does not belong to this code");
  }
  Matrix acc = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  double c = 0.0;
  for (const auto& e : table.entries()) {
    const Matrix p = error_projector(code, e.syndrome);
    const Matrix kept = p * rho.matrix() * p;
    c += kept.trace().real();
    acc += conjugate(e.recovery, kept);
  }
  return {std::move(acc), c};
}

}  // namespace

CorrectionResult recovery_corrected_expectation(const DensityMatrix& rho,
                                                const PauliSum& gamma,
                                                const StabilizerCode& code,
                                                const SyndromeTable& table,
                                                const CorrectionOptions& opts) {
  check_register(rho, code);
  check_gamma(gamma, code);
  auto [acc, c] = recovered(rho, code, table);
  check_support(c, opts.support_cutoff);
  CorrectionResult r;
  r.c = c;
  Complex num = 0.0;
  for (const auto& t : gamma.terms()) num += t.coefficient * pauli_trace(acc, t.op);
  r.numerator = num.real();
  r.value = r.numerator / c;
  if (opts.materialize_state) r.corrected_state = DensityMatrix(acc / c);
  return r;
}

CorrectionResult recover_state(const DensityMatrix& rho, const StabilizerCode& code,
                               const SyndromeTable& table, double support_cutoff) {
  check_register(rho, code);
  auto [acc, c] = recovered(rho, code, table);
  check_support(c, support_cutoff);
  CorrectionResult r;
  r.c = c;
  r.value = 1.0;
  r.numerator = c;
  r.corrected_state = DensityMatrix(acc / c);
  return r;
}

}  // namespace qsed
