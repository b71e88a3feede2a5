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

#include "qsed/qse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

namespace qsed {

namespace {

void check_ops(std::span<const PauliString> ops, std::size_t n, const char* what) {
  if (ops.empty()) throw ArgumentError(std::string(what) + ": no expansion operators");
  for (const auto& op : ops) {
    if (op.n_qubits() != n) {
      throw DimensionError(std::string(what) + ": operator " + op.str() +
                           " does not match the " + std::to_string(n) +
                           "-qubit state");
    }
  }
}

bool all_commute(std::span<const PauliString> ops, const PauliSum& target) {
  for (const auto& op : ops) {
    for (const auto& t : target.terms()) {
      if (!commutes(op, t.op)) return false;
    }
  }
  return true;
}

/// Memoized Tr[A P] keyed on the operator part of P.
class TraceCache {
 public:
  explicit TraceCache(const Matrix& a) : a_(a) {}
  Complex operator()(const PauliString& p) {
    const auto key = std::make_pair(p.x_mask(), p.z_mask());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, pauli_trace(a_, p.with_phase_exponent(0))).first;
    }
    return p.phase() * it->second;
  }

 private:
  const Matrix& a_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Complex> cache_;
};

}  // namespace

QseMatrices build_qse_matrices(const QseProblem& problem) {
  const auto& ops = problem.expansion_ops;
  const std::size_t n = problem.state.n_qubits();
  check_ops(ops, n, "build_qse_matrices");
  if (problem.target.n_qubits() != n) {
    throw DimensionError("build_qse_matrices: target does not match the state");
  }
  const auto k = static_cast<Eigen::Index>(ops.size());
  const Matrix& rho = problem.state.matrix();
  const Matrix h_dense = to_dense(problem.target);

  QseMatrices out;
  out.s.resize(k, k);
  out.h.resize(k, k);
  out.reduced = all_commute(ops, problem.target);

  TraceCache s_trace(rho);
  std::vector<PauliString> adj;
  adj.reserve(ops.size());
  for (const auto& op : ops) adj.push_back(op.adjoint());

  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      out.s(i, j) = s_trace(multiply(adj[i], ops[j]));
    }
  }

  if (out.reduced) {
    // [M_i, H] = 0: Tr[M_i^dag H M_j rho] = Tr[(rho H) M_i^dag M_j].
    const Matrix rho_h = rho * h_dense;
    TraceCache h_trace(rho_h);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        out.h(i, j) = h_trace(multiply(adj[i], ops[j]));
      }
    }
  } else {
    // Tr[M_i^dag H M_j rho] = Tr[(H M_j rho) M_i^dag].
    for (Eigen::Index j = 0; j < k; ++j) {
      const Matrix hmr = h_dense * apply_left(ops[j], rho);
      for (Eigen::Index i = 0; i < k; ++i) out.h(i, j) = pauli_trace(hmr, adj[i]);
    }
  }
  return out;
}

QseSolution canonical_solve(const Matrix& h, const Matrix& s, double epsilon) {
  if (h.rows() != h.cols() || s.rows() != s.cols() || h.rows() != s.rows()) {
    throw DimensionError("canonical_solve: H and S must be square and equal-sized");
  }
  if (h.rows() == 0) throw EmptySubspaceError("canonical_solve: empty problem");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ArgumentError("canonical_solve: epsilon must lie in (0, 1)");
  }
  QseSolution sol;
  sol.h_matrix = h;
  sol.s_matrix = s;
  const Matrix hh = 0.5 * (h + h.adjoint());
  const Matrix sh = 0.5 * (s + s.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> s_eig(sh);
  const Eigen::VectorXd& lam = s_eig.eigenvalues();
  const double lam_max = lam.maxCoeff();
  if (!(lam_max > 0.0)) {
    throw EmptySubspaceError("overlap matrix has no positive eigenvalue");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > epsilon * lam_max) keep.push_back(i);
  }
  if (keep.empty()) throw EmptySubspaceError("every overlap direction was discarded");

  const auto r = static_cast<Eigen::Index>(keep.size());
  Matrix whiten(h.rows(), r);
  for (Eigen::Index c = 0; c < r; ++c) {
    whiten.col(c) = s_eig.eigenvectors().col(keep[c]) / std::sqrt(lam(keep[c]));
  }
  const Matrix h_red = whiten.adjoint() * hh * whiten;
  Eigen::SelfAdjointEigenSolver<Matrix> h_eig(0.5 * (h_red + h_red.adjoint()));

  sol.retained_rank = static_cast<std::size_t>(r);
  sol.eigenvalues = h_eig.eigenvalues();
  sol.eigenvectors = whiten * h_eig.eigenvectors();
  sol.ground_energy = sol.eigenvalues(0);

  // Degenerate ground space: take the direction closest to the uniform
  // (pure projector) coefficient vector in the S metric.
  const double tie = 1e-9 * std::max(1.0, std::abs(sol.ground_energy));
  Eigen::Index n_deg = 1;
  while (n_deg < r && sol.eigenvalues(n_deg) - sol.ground_energy <= tie) ++n_deg;
  Vector ground = sol.eigenvectors.col(0);
  if (n_deg > 1) {
    const Vector uniform = Vector::Ones(h.rows());
    const Matrix basis = sol.eigenvectors.leftCols(n_deg);
    const Vector overlap = basis.adjoint() * (sh * uniform);
    const double w = overlap.norm();
    if (w > 1e-12) ground = basis * overlap / w;
  }
  // Fix the global phase: largest-magnitude coefficient real and positive.
  Eigen::Index arg = 0;
  ground.cwiseAbs().maxCoeff(&arg);
  ground *= std::conj(ground(arg)) / std::abs(ground(arg));
  sol.coefficients = ground;

  const double sum = std::abs(ground.sum());
  sol.c_norm = sum > 0.0 ? 1.0 / (sum * sum) : std::numeric_limits<double>::infinity();
  return sol;
}

Matrix relaxed_projector(std::span<const PauliString> ops, const Vector& coefficients) {
  if (ops.empty() || static_cast<Eigen::Index>(ops.size()) != coefficients.size()) {
    throw DimensionError("relaxed_projector: operator/coefficient count mismatch");
  }
  const std::size_t n = ops.front().n_qubits();
  detail::check_dense_size(n, kDefaultMaxDenseQubits);
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const PauliString& op = ops[i];
    if (op.n_qubits() != n) throw DimensionError("relaxed_projector: mixed registers");
    const Complex ph = coefficients(static_cast<Eigen::Index>(i)) *
                       detail::i_pow(op.xz_phase_exponent());
    for (std::uint64_t b = 0; b < dim; ++b) {
      p(b ^ op.x_mask(), b) += ph * detail::parity_sign(op.z_mask() & b);
    }
  }
  return p;
}

QseCorrection qse_correct(const QseProblem& problem, double epsilon) {
  const QseMatrices mats = build_qse_matrices(problem);
  QseSolution sol = canonical_solve(mats.h, mats.s, epsilon);
  const Matrix p = relaxed_projector(problem.expansion_ops, sol.coefficients);
  Matrix out = p * problem.state.matrix() * p.adjoint();
  const double norm = out.trace().real();
  if (!(norm > 0.0)) throw EmptySubspaceError("corrected state has zero norm");
  out /= norm;
  return {std::move(sol), DensityMatrix(std::move(out))};
}

PauliSum code_hamiltonian(const StabilizerCode& code, std::size_t l) {
  if (l > code.m()) throw ArgumentError("code_hamiltonian: level exceeds m");
  PauliSum h(code.n());
  for (std::size_t i = 0; i < l; ++i) h.add(-1.0, code.generators()[i]);
  if (h.empty()) h.add(0.0, PauliString(code.n()));
  return h;
}

PauliSum code_hamiltonian(const StabilizerCode& code) {
  return code_hamiltonian(code, code.m());
}

PauliSum encode_logical(const PauliSum& op_k, const StabilizerCode& code) {
  if (op_k.n_qubits() != code.k()) {
    throw DimensionError("encode_logical: operator acts on " +
                         std::to_string(op_k.n_qubits()) + " qubits, code has k = " +
                         std::to_string(code.k()));
  }
  PauliSum out(code.n());
  for (const auto& t : op_k.terms()) {
    PauliString acc(code.n());
    Complex coeff = t.coefficient * t.op.phase();
    for (std::size_t q = 0; q < code.k(); ++q) {
      switch (t.op.pauli_at(q)) {
        case 'X': acc = multiply(acc, code.logical_x()[q]); break;
        case 'Z': acc = multiply(acc, code.logical_z()[q]); break;
        case 'Y':
          acc = multiply(acc, multiply(code.logical_x()[q], code.logical_z()[q]));
          coeff *= Complex(0.0, 1.0);
          break;
        default: break;
      }
    }
    out.add(coeff, acc);
  }
  return out;
}

std::vector<PauliString> logical_operator_basis(const StabilizerCode& code) {
  std::vector<PauliString> out{PauliString(code.n())};
  for (std::size_t q = 0; q < code.k(); ++q) {
    const PauliString& x = code.logical_x()[q];
    const PauliString& z = code.logical_z()[q];
    // Y_L = i X_L Z_L
    const PauliString xz = multiply(x, z);
    out.push_back(x);
    out.push_back(xz.with_phase_exponent(xz.phase_exponent() + 1));
    out.push_back(z);
  }
  return out;
}

TwoStageResult two_stage_logical_qse(const DensityMatrix& rho,
                                     const StabilizerCode& code,
                                     const PauliSum& problem_h_logical,
                                     std::span<const PauliString> check_ops,
                                     std::span<const PauliString> logical_ops,
                                     double epsilon) {
  if (problem_h_logical.n_qubits() != code.n()) {
    throw DimensionError("two_stage_logical_qse: encode the problem Hamiltonian first");
  }
  QseProblem stage1_problem{{check_ops.begin(), check_ops.end()},
                            code_hamiltonian(code), rho};
  QseCorrection stage1 = qse_correct(stage1_problem, epsilon);

  TwoStageResult out;
  out.stage1 = std::move(stage1.solution);
  if (logical_ops.empty()) {
    out.energy = expectation(stage1.corrected_state, problem_h_logical).real();
    out.spectrum = Eigen::VectorXd::Constant(1, out.energy);
    out.corrected_state = std::move(stage1.corrected_state);
    return out;
  }
  QseProblem stage2_problem{{logical_ops.begin(), logical_ops.end()},
                            problem_h_logical, stage1.corrected_state};
  QseCorrection stage2 = qse_correct(stage2_problem, epsilon);
  out.energy = stage2.solution.ground_energy;
  out.spectrum = stage2.solution.eigenvalues;
  out.corrected_state = std::move(stage2.corrected_state);
  out.stage2 = std::move(stage2.solution);
  return out;
}

TwoStageResult two_stage_logical_qse(const DensityMatrix& rho,
                                     const StabilizerCode& code,
                                     const PauliSum& problem_h_logical,
                                     std::span<const PauliString> expansion,
                                     double epsilon) {
  const auto group = hierarchy_group(code, code.m());
  std::vector<PauliString> checks, logicals;
  for (const auto& op : expansion) {
    const bool in_group = std::any_of(group.begin(), group.end(), [&](const PauliString& g) {
      return PauliString::same_operator(g, op);
    });
    (in_group ? checks : logicals).push_back(op);
  }
  if (checks.empty()) checks.emplace_back(code.n());
  const bool has_identity = std::any_of(logicals.begin(), logicals.end(), [](const PauliString& p) {
    return p.is_identity_up_to_phase();
  });
  if (!logicals.empty() && !has_identity) logicals.insert(logicals.begin(), PauliString(code.n()));
  return two_stage_logical_qse(rho, code, problem_h_logical, checks, logicals, epsilon);
}

SymmetryQseResult symmetry_qse(const DensityMatrix& rho,
                               std::span<const PauliString> generators,
                               const PauliSum& problem_h, std::size_t l,
                               const StateVector* reference, double epsilon) {
  std::vector<PauliString> ops = generators.empty() && l == 0
                                     ? std::vector<PauliString>{PauliString(rho.n_qubits())}
                                     : hierarchy_group(generators, l);
  QseCorrection corr = qse_correct(QseProblem{std::move(ops), problem_h, rho}, epsilon);
  SymmetryQseResult out;
  out.energy = corr.solution.ground_energy;
  out.solution = std::move(corr.solution);
  if (reference != nullptr) out.fidelity = fidelity(corr.corrected_state, *reference);
  out.corrected_state = std::move(corr.corrected_state);
  return out;
}

}  // namespace qsed
