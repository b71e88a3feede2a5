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

#include "qsed/pauli.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace qsed;
using qsed::testing::kron_dense;

namespace {

PauliString L(const char* s) { return PauliString::from_label(s); }

/// Every Pauli (all four phases) on n qubits.
std::vector<PauliString> all_paulis(std::size_t n, bool with_phases) {
  std::vector<PauliString> out;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      for (int k = 0; k < (with_phases ? 4 : 1); ++k) out.emplace_back(n, x, z, k);
    }
  }
  return out;
}

}  // namespace

TEST(PauliString, LabelRoundTrip) {
  EXPECT_EQ(L("XZZXI").str(), "+XZZXI");
  EXPECT_EQ(L("-iYI").str(), "-iYI");
  EXPECT_EQ(L("+iZ").phase(), Complex(0, 1));
  EXPECT_EQ(L("Y").letters(), "Y");
  EXPECT_TRUE(L("Y").is_hermitian());
  EXPECT_FALSE(L("+iY").is_hermitian());
  EXPECT_EQ(L("XZZXI").pauli_at(1), 'Z');
}

TEST(PauliString, LabelErrors) {
  EXPECT_THROW(L("XQ"), ParseError);
  EXPECT_THROW(L(""), ParseError);
  EXPECT_THROW(L("+i"), ParseError);
  EXPECT_THROW(L("iX"), ParseError);
  EXPECT_THROW(PauliString(65), ResourceError);
  EXPECT_THROW(PauliString(2, 0b100, 0, 0), ArgumentError);
  EXPECT_THROW(PauliString::single(3, 3, 'X'), ArgumentError);
}

TEST(PauliString, SingleQubitRelations) {
  EXPECT_EQ(L("X") * L("Z"), L("-iY"));
  EXPECT_EQ(L("Z") * L("X"), L("+iY"));
  EXPECT_EQ(L("X") * L("Y"), L("+iZ"));
  EXPECT_EQ(L("Y") * L("Z"), L("+iX"));
  EXPECT_EQ(L("Y") * L("Y"), L("I"));
}

TEST(PauliString, IdentityIsNeutral) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const PauliString a = qsed::testing::random_pauli(7, rng);
    EXPECT_EQ(PauliString(7) * a, a);
    EXPECT_EQ(a * PauliString(7), a);
  }
}

TEST(PauliString, FiveQubitGeneratorProduct) {
  const PauliString p = L("XZZXI") * L("IXZZX");
  EXPECT_EQ(p, L("XYIYX"));
  const Matrix dense = kron_dense(L("XZZXI")) * kron_dense(L("IXZZX"));
  EXPECT_EQ((dense - kron_dense(p)).norm(), 0.0);
}

TEST(PauliString, LengthMismatch) {
  EXPECT_THROW(L("XX") * L("X"), DimensionError);
  EXPECT_THROW(commutes(L("XX"), L("X")), DimensionError);
}

TEST(PauliString, Commutation) {
  EXPECT_FALSE(commutes(L("X"), L("Z")));
  EXPECT_TRUE(commutes(L("XZZXI"), L("IXZZX")));
  EXPECT_FALSE(commutes(L("XXXXX"), L("ZZZZZ")));
  EXPECT_TRUE(commutes(L("XX"), L("ZZ")));
}

TEST(PauliString, Weight) {
  EXPECT_EQ(weight(PauliString(5)), 0u);
  EXPECT_EQ(weight(L("XZZXI")), 4u);
  EXPECT_EQ(weight(L("XXXXX")), 5u);
  EXPECT_EQ(weight(L("-iIYI")), 1u);
}

TEST(PauliString, DenseExamples) {
  EXPECT_EQ((to_dense(L("I")) - Matrix::Identity(2, 2)).norm(), 0.0);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_EQ((to_dense(L("X")) - x).norm(), 0.0);
  Matrix zz = Matrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  EXPECT_EQ((to_dense(L("ZZ")) - zz).norm(), 0.0);
  EXPECT_THROW(to_dense(PauliString(13)), ResourceError);
  EXPECT_THROW(to_dense(PauliString(3), 2), ResourceError);
}

// Exhaustive over every ordered pair (with all phases on the left operand)
// up to three qubits: product, commutation and adjoint against Kronecker
// products.
TEST(PauliOracle, AllPairsUpToThreeQubits) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lefts = all_paulis(n, true);
    const auto rights = all_paulis(n, false);
    std::vector<Matrix> right_dense;
    for (const auto& b : rights) right_dense.push_back(kron_dense(b));
    for (const auto& a : lefts) {
      const Matrix da = kron_dense(a);
      ASSERT_EQ((to_dense(a) - da).norm(), 0.0) << a.str();
      ASSERT_EQ((to_dense(a.adjoint()) - da.adjoint()).norm(), 0.0) << a.str();
      ASSERT_EQ(a.is_hermitian(), (da - da.adjoint()).norm() == 0.0) << a.str();
      for (std::size_t j = 0; j < rights.size(); ++j) {
        const Matrix& db = right_dense[j];
        const PauliString ab = a * rights[j];
        ASSERT_EQ((to_dense(ab) - da * db).norm(), 0.0) << a.str() << " * " << rights[j].str();
        const bool dense_commute = (da * db - db * da).norm() == 0.0;
        ASSERT_EQ(commutes(a, rights[j]), dense_commute) << a.str() << " , " << rights[j].str();
      }
    }
  }
}

TEST(PauliProperty, Associativity) {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 64;
    const auto a = qsed::testing::random_pauli(n, rng);
    const auto b = qsed::testing::random_pauli(n, rng);
    const auto c = qsed::testing::random_pauli(n, rng);
    ASSERT_EQ((a * b) * c, a * (b * c)) << a.str() << " " << b.str() << " " << c.str();
  }
}

TEST(PauliProperty, HermitianSquaresAreIdentity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 64;
    const auto a = qsed::testing::random_hermitian_pauli(n, rng);
    ASSERT_TRUE(a.is_hermitian());
    ASSERT_EQ(a * a, PauliString(n));
    ASSERT_EQ(a * a.adjoint(), PauliString(n));
  }
}

TEST(PauliProperty, CommutationMatchesProductOrder) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 64;
    const auto a = qsed::testing::random_pauli(n, rng);
    const auto b = qsed::testing::random_pauli(n, rng);
    const PauliString ab = a * b, ba = b * a;
    ASSERT_TRUE(PauliString::same_operator(ab, ba));
    ASSERT_EQ(commutes(a, b), ab == ba);
  }
}

TEST(DenseHelpers, MatchMatrixProducts) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const Matrix a = qsed::testing::random_matrix(dim, rng);
    const PauliString p = qsed::testing::random_pauli(n, rng);
    const Matrix dp = kron_dense(p);
    EXPECT_NEAR(std::abs(pauli_trace(a, p) - (a * dp).trace()), 0.0, 1e-12);
    EXPECT_LT((apply_left(p, a) - dp * a).norm(), 1e-12);
    EXPECT_LT((apply_right(a, p) - a * dp).norm(), 1e-12);
    EXPECT_LT((conjugate(p, a) - dp * a * dp.adjoint()).norm(), 1e-12);
  }
}

TEST(PauliSum, ParseText) {
  const PauliSum h = PauliSum::from_text("# comment\nXX 0.5\nZZ -0.25  # trailing\n\n");
  ASSERT_EQ(h.terms().size(), 2u);
  EXPECT_EQ(h.n_qubits(), 2u);
  EXPECT_THROW(PauliSum::from_text("XX 0.5\nZ 1"), ParseError);
  EXPECT_THROW(PauliSum::from_text("XX abc"), ParseError);
  EXPECT_THROW(PauliSum::from_text("# nothing"), ParseError);
}

TEST(PauliSum, ParseExpression) {
  const PauliSum a = PauliSum::from_expression("0.5*XX - 0.25*ZZ + YY");
  const PauliSum b = PauliSum::from_text("XX 0.5\nZZ -0.25\nYY 1");
  EXPECT_LT((kron_dense(a) - kron_dense(b)).norm(), 1e-15);
  EXPECT_THROW(PauliSum::from_expression(""), ParseError);
  EXPECT_THROW(PauliSum::from_expression("0.5*XX + Z"), DimensionError);
}

TEST(PauliSum, CanonicalMergesAndSorts) {
  PauliSum s(2);
  s.add(1.0, L("ZZ"));
  s.add(0.5, L("XI"));
  s.add(-1.0, L("ZZ"));
  s.add(Complex(0, 1), L("-iXI"));  // i * (-i XI) = +XI
  const PauliSum c = s.canonical();
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.terms()[0].op, L("XI"));
  EXPECT_NEAR(std::abs(c.terms()[0].coefficient - 1.5), 0.0, 1e-15);
}

TEST(PauliSum, ProductAndHermiticityMatchDense) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 3;
    PauliSum a(n), b(n);
    for (int k = 0; k < 4; ++k) {
      a.add(Complex(g(rng), g(rng)), qsed::testing::random_pauli(n, rng));
      b.add(Complex(g(rng), g(rng)), qsed::testing::random_pauli(n, rng));
    }
    EXPECT_LT((to_dense(a * b) - kron_dense(a) * kron_dense(b)).norm(), 1e-12);
    EXPECT_LT((to_dense(a.adjoint()) - kron_dense(a).adjoint()).norm(), 1e-12);
    const PauliSum herm = a + a.adjoint();
    EXPECT_TRUE(herm.is_hermitian());
  }
  EXPECT_FALSE(PauliSum(L("+iX")).is_hermitian());
  EXPECT_TRUE(PauliSum(L("X"), 2.0).is_hermitian());
}
