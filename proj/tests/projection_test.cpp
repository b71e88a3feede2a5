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

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace qsed;
using qsed::testing::kron_dense;

namespace {

PauliString L(const char* s) { return PauliString::from_label(s); }

/// prod_{i<l} (I + S_i)/2 from Kronecker products.
Matrix projector_oracle(const StabilizerCode& code, std::size_t l) {
  const Eigen::Index dim = Eigen::Index{1} << code.n();
  Matrix p = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < l; ++i) {
    p = p * (0.5 * (Matrix::Identity(dim, dim) + kron_dense(code.generators()[i])));
  }
  return p;
}

PauliSum mixed_logical(const StabilizerCode& code) {
  PauliSum g(code.n());
  g.add(0.3, code.logical_x().front());
  g.add(-0.7, code.logical_z().front());
  g.add(0.2, code.generators()[0]);
  return g;
}

DensityMatrix code_state(const StabilizerCode& code) {
  return DensityMatrix::from_pure(prepare_logical_state(code, 2 * 3.14159265358979 / 5, 1.047));
}

DensityMatrix mix_with_error(const DensityMatrix& rho, const PauliString& e, double p) {
  return DensityMatrix((1.0 - p) * rho.matrix() + p * apply_pauli(rho, e).matrix());
}

}  // namespace

TEST(CodeProjector, Properties) {
  const StabilizerCode code = five_qubit_code();
  EXPECT_LT((code_projector(code, 0) - Matrix::Identity(32, 32)).norm(), 1e-15);
  for (std::size_t l = 0; l <= 4; ++l) {
    const Matrix p = code_projector(code, l);
    EXPECT_LT((p * p - p).norm(), 1e-12) << l;
    EXPECT_LT((p - p.adjoint()).norm(), 1e-12) << l;
    EXPECT_LT((p - projector_oracle(code, l)).norm(), 1e-12) << l;
    // Uniform group sum with coefficient 2^-l.
    Matrix sum = Matrix::Zero(32, 32);
    for (const auto& m : hierarchy_group(code, l)) sum += kron_dense(m);
    EXPECT_LT((p - sum / static_cast<double>(std::size_t{1} << l)).norm(), 1e-12) << l;
  }
  EXPECT_NEAR(code_projector(code, 4).trace().real(), 2.0, 1e-12);
  EXPECT_THROW(code_projector(code, 5), ArgumentError);
}

TEST(CorrectedExpectation, CodeStateIsUnchanged) {
  const StabilizerCode code = five_qubit_code();
  const DensityMatrix rho = code_state(code);
  const PauliSum g = mixed_logical(code);
  for (std::size_t l = 0; l <= 4; ++l) {
    const CorrectionResult r = corrected_expectation(rho, g, code, l);
    EXPECT_NEAR(r.c, 1.0, 1e-12);
    EXPECT_NEAR(r.value, expectation(rho, g).real(), 1e-12);
  }
}

TEST(CorrectedExpectation, SingleErrorRemoved) {
  const StabilizerCode code = five_qubit_code();
  const DensityMatrix clean = code_state(code);
  const PauliSum g = mixed_logical(code);
  const double truth = expectation(clean, g).real();
  for (const auto& e : single_qubit_errors(5)) {
    const DensityMatrix rho = mix_with_error(clean, e, 0.3);
    const CorrectionResult r = corrected_expectation(rho, g, code, 4);
    EXPECT_NEAR(r.value, truth, 1e-12) << e.str();
    EXPECT_NEAR(r.c, 0.7, 1e-12) << e.str();
  }
}

TEST(CorrectedExpectation, TotallyMixedState) {
  const StabilizerCode code = five_qubit_code();
  const CorrectionResult r = corrected_expectation(DensityMatrix::maximally_mixed(5),
                                                   PauliSum(code.logical_z().front()), code, 4);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
  EXPECT_NEAR(r.c, 1.0 / 16.0, 1e-14);
}

TEST(CorrectedExpectation, Errors) {
  const StabilizerCode code = five_qubit_code();
  const DensityMatrix rho = code_state(code);
  EXPECT_THROW(corrected_expectation(rho, PauliSum(PauliString::single(5, 0, 'Z')), code, 4),
               ContractError);
  EXPECT_THROW(corrected_expectation(rho, PauliSum(L("+iXXXXX")), code, 4), ContractError);
  EXPECT_THROW(corrected_expectation(rho, PauliSum(L("XX")), code, 4), DimensionError);
  // All weight in the S_1 = -1 space.
  const DensityMatrix outside = apply_pauli(rho, PauliString::single(5, 0, 'X'));
  EXPECT_THROW(corrected_expectation(outside, PauliSum(code.logical_z().front()), code, 4),
               NoSupportError);
}

TEST(CorrectedExpectation, DenseOracleAndTwoSided) {
  const StabilizerCode code = five_qubit_code();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = qsed::testing::random_density(5, rng);
    const std::size_t l = rng() % 5;
    const Matrix p = projector_oracle(code, l);
    const Matrix prp = p * rho.matrix() * p;
    const double c = prp.trace().real();

    const PauliSum g = mixed_logical(code);
    CorrectionOptions opts;
    opts.materialize_state = true;
    const CorrectionResult r = corrected_expectation(rho, g, code, l, opts);
    EXPECT_NEAR(r.c, c, 1e-12);
    EXPECT_NEAR(r.value, (prp * kron_dense(g)).trace().real() / c, 1e-10);
    EXPECT_LT((r.corrected_state->matrix() - prp / c).norm(), 1e-10);
    EXPECT_TRUE(r.corrected_state->invariants().ok());

    // An arbitrary Hermitian Pauli needs the two-sided form.
    PauliSum arb(5);
    arb.add(0.8, qsed::testing::random_hermitian_pauli(5, rng));
    arb.add(-0.4, qsed::testing::random_hermitian_pauli(5, rng));
    opts.two_sided = true;
    const CorrectionResult r2 = corrected_expectation(rho, arb, code, l, opts);
    EXPECT_NEAR(r2.value, (prp * kron_dense(arb)).trace().real() / c, 1e-10);
  }
}

TEST(CorrectedExpectation, SupportIsMonotoneInLevel) {
  const StabilizerCode code = five_qubit_code();
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = qsed::testing::random_density(5, rng);
    double prev = 1.0 + 1e-12;
    for (std::size_t l = 0; l <= 4; ++l) {
      const double c = project_state(rho, code, l).c;
      EXPECT_LE(c, prev + 1e-12);
      EXPECT_GE(c, 0.0);
      prev = c;
    }
  }
}

TEST(ErrorProjector, Properties) {
  const StabilizerCode code = five_qubit_code();
  EXPECT_LT((error_projector(code, Syndrome{0, 4}) - code_projector(code, 4)).norm(), 1e-13);
  Matrix sum = Matrix::Zero(32, 32);
  for (std::uint64_t s = 0; s < 16; ++s) {
    const Matrix p = error_projector(code, Syndrome{s, 4});
    EXPECT_LT((p * p - p).norm(), 1e-12);
    sum += p;
  }
  EXPECT_LT((sum - Matrix::Identity(32, 32)).norm(), 1e-12);

  const StateVector psi = prepare_logical_state(code, 0.7, 0.2);
  for (const auto& e : single_qubit_errors(5)) {
    const Vector ev = apply_pauli(psi, e).amplitudes();
    const Matrix p = error_projector(code, syndrome(code, e));
    EXPECT_LT((p * ev - ev).norm(), 1e-12) << e.str();
  }
  EXPECT_THROW(error_projector(code, Syndrome{0, 3}), ArgumentError);
}

TEST(Recovery, Examples) {
  const StabilizerCode code = five_qubit_code();
  const DensityMatrix clean = code_state(code);
  const PauliSum g = mixed_logical(code);
  const double truth = expectation(clean, g).real();
  const SyndromeTable table = build_syndrome_table(code);

  const CorrectionResult r0 = recovery_corrected_expectation(clean, g, code, table);
  EXPECT_NEAR(r0.c, 1.0, 1e-12);
  EXPECT_NEAR(r0.value, truth, 1e-12);

  const CorrectionResult r1 =
      recovery_corrected_expectation(mix_with_error(clean, PauliString::single(5, 0, 'X'), 0.3), g, code, table);
  EXPECT_NEAR(r1.c, 1.0, 1e-12);
  EXPECT_NEAR(r1.value, truth, 1e-12);

  const CorrectionResult r2 = recovery_corrected_expectation(apply_pauli(clean, L("XXIII")), g, code, table);
  EXPECT_NEAR(r2.c, 1.0, 1e-12);
  EXPECT_GT(std::abs(r2.value - truth), 1e-3);
}

TEST(Recovery, IdentityTableEqualsProjection) {
  const StabilizerCode code = five_qubit_code();
  const SyndromeTable only_identity = build_syndrome_table(code, std::vector<PauliString>{});
  std::mt19937_64 rng(23);
  const PauliSum g = mixed_logical(code);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = qsed::testing::random_noisy_code_state(code, rng);
    const CorrectionResult a = recovery_corrected_expectation(rho, g, code, only_identity);
    const CorrectionResult b = corrected_expectation(rho, g, code, 4);
    EXPECT_NEAR(a.value, b.value, 1e-12);
    EXPECT_NEAR(a.c, b.c, 1e-12);
  }
}

TEST(Recovery, StabilizerEquivalentRecoveriesAgree) {
  const StabilizerCode code = five_qubit_code();
  const SyndromeTable base = build_syndrome_table(code);
  const auto group = hierarchy_group(code, 4);
  std::mt19937_64 rng(24);
  // R_i -> R_i * S for a random group element S per entry.
  std::vector<SyndromeTable::Entry> shifted = base.entries();
  for (auto& e : shifted) e.recovery = e.recovery * group[rng() % group.size()];
  const SyndromeTable alt(code.m(), shifted);
  const PauliSum g = mixed_logical(code);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = qsed::testing::random_density(5, rng);
    const CorrectionResult a = recovery_corrected_expectation(rho, g, code, base);
    const CorrectionResult b = recovery_corrected_expectation(rho, g, code, alt);
    EXPECT_NEAR(a.value, b.value, 1e-12);
    EXPECT_NEAR(a.c, b.c, 1e-12);
  }
}

TEST(Recovery, StateMatchesDenseSum) {
  const StabilizerCode code = five_qubit_code();
  const SyndromeTable table = build_syndrome_table(code);
  std::mt19937_64 rng(25);
  const DensityMatrix rho = qsed::testing::random_density(5, rng);
  Matrix acc = Matrix::Zero(32, 32);
  double c = 0.0;
  for (const auto& e : table.entries()) {
    Matrix p = Matrix::Identity(32, 32);
    for (std::size_t j = 0; j < 4; ++j) {
      const double sign = e.syndrome[j] ? -1.0 : 1.0;
      p = p * (0.5 * (Matrix::Identity(32, 32) + sign * kron_dense(code.generators()[j])));
    }
    const Matrix r = kron_dense(e.recovery);
    acc += r * p * rho.matrix() * p * r.adjoint();
    c += (p * rho.matrix()).trace().real();
  }
  const CorrectionResult got = recover_state(rho, code, table);
  EXPECT_NEAR(got.c, c, 1e-12);
  EXPECT_LT((got.corrected_state->matrix() - acc / c).norm(), 1e-12);
}
