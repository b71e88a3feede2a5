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

#include "qsed/stabilizer_code.hpp"

#include <set>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace qsed;

namespace {

PauliString L(const char* s) { return PauliString::from_label(s); }

/// Bit j set iff e anticommutes with gens[j], from the symplectic form.
std::uint64_t symplectic_syndrome(const std::vector<PauliString>& gens, const PauliString& e) {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const int form = std::popcount((gens[j].x_mask() & e.z_mask()) ^ (gens[j].z_mask() & e.x_mask()));
    if (form & 1) bits |= std::uint64_t{1} << j;
  }
  return bits;
}

}  // namespace

TEST(LoadCode, BundledFiveQubitFile) {
  const StabilizerCode code = load_code_file(std::string(QSED_DATA_DIR) + "/codes/five_one_three.code");
  EXPECT_EQ(code.n(), 5u);
  EXPECT_EQ(code.k(), 1u);
  EXPECT_EQ(code.m(), 4u);
  EXPECT_EQ(code.d(), std::optional<std::size_t>(3));
  const std::vector<PauliString> gens{L("XZZXI"), L("IXZZX"), L("XIXZZ"), L("ZXIXZ")};
  EXPECT_EQ(code.generators(), gens);
  EXPECT_EQ(code.logical_x().front(), L("XXXXX"));
  EXPECT_EQ(code.logical_z().front(), L("ZZZZZ"));
  EXPECT_FALSE(code.errors_declared());
  EXPECT_EQ(code.correctable_errors().size(), 15u);
  EXPECT_EQ(five_qubit_code().generators(), gens);
}

TEST(LoadCode, TrivialSingleQubit) {
  const StabilizerCode code = load_code_file(std::string(QSED_DATA_DIR) + "/codes/trivial_1q.code");
  EXPECT_EQ(code.m(), 0u);
  EXPECT_EQ(code.n(), 1u);
  EXPECT_EQ(hierarchy_group(code, 0), std::vector<PauliString>{PauliString(1)});
}

TEST(LoadCode, ValidationErrors) {
  // k = 0
  EXPECT_THROW(load_code("n 2\nk 0\nstabilizer XX\nstabilizer ZZ\n"), ValidationError);
  // anticommuting generators
  EXPECT_THROW(load_code("n 2\nk 1\nstabilizer XI\nstabilizer ZI\nlogical_x IX\nlogical_z IZ\n"),
               ValidationError);
  // dependent generators (third = product of the first two)
  EXPECT_THROW(load_code("n 4\nk 1\nstabilizer ZZII\nstabilizer IZZI\nstabilizer ZIZI\n"
                         "logical_x XXXX\nlogical_z ZIII\n"),
               ValidationError);
  // malformed label
  EXPECT_THROW(load_code("n 1\nk 1\nlogical_x Q\nlogical_z Z\n"), ValidationError);
  // logical anticommutes with a generator
  EXPECT_THROW(load_code("n 2\nk 1\nstabilizer ZZ\nlogical_x XI\nlogical_z ZI\n"), ValidationError);
  // missing logicals
  EXPECT_THROW(load_code("n 1\nk 1\nlogical_x X\n"), ValidationError);
  EXPECT_THROW(load_code("n 1\nk 1\nfoo 3\n"), ValidationError);
}

TEST(LoadCode, ErrorNamesTheLine) {
  try {
    load_code("n 2\nk 1\nstabilizer XI\nstabilizer ZI\nlogical_x IX\nlogical_z IZ\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(LoadCode, DeclaredErrorsAndPriors) {
  const StabilizerCode code = load_code(
      "n 3\nk 1\nstabilizer ZZI\nstabilizer IZZ\nlogical_x XXX\nlogical_z ZII\n"
      "error XII 0.1\nerror IXI 0.1\nerror IIX 0.1\n");
  EXPECT_TRUE(code.errors_declared());
  ASSERT_EQ(code.correctable_errors().size(), 3u);
  const SyndromeTable table = build_syndrome_table(code);
  ASSERT_EQ(table.size(), 4u);
  const auto b = table.default_sampling_weights();
  EXPECT_NEAR(b[0], 0.7, 1e-12);
  EXPECT_NEAR(b[1], 0.1, 1e-12);
  double sum = 0.0;
  for (double v : b) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Hierarchy, SmallLevels) {
  const StabilizerCode code = five_qubit_code();
  EXPECT_EQ(hierarchy_group(code, 0), std::vector<PauliString>{PauliString(5)});
  const std::vector<PauliString> l1{PauliString(5), L("XZZXI")};
  EXPECT_EQ(hierarchy_group(code, 1), l1);
  EXPECT_THROW(hierarchy_group(code, 5), ArgumentError);
}

TEST(Hierarchy, FullGroupIsClosed) {
  const StabilizerCode code = five_qubit_code();
  const auto group = hierarchy_group(code, 4);
  ASSERT_EQ(group.size(), 16u);
  std::set<std::pair<std::uint64_t, std::uint64_t>> ops;
  for (const auto& g : group) {
    EXPECT_TRUE(g.is_hermitian());
    ops.insert({g.x_mask(), g.z_mask()});
  }
  EXPECT_EQ(ops.size(), 16u);
  for (const auto& a : group) {
    for (const auto& b : group) {
      const PauliString ab = a * b;
      EXPECT_EQ(ab.phase(), Complex(1.0, 0.0)) << a.str() << " * " << b.str();
      const bool member = std::any_of(group.begin(), group.end(), [&](const PauliString& g) { return g == ab; });
      EXPECT_TRUE(member) << ab.str();
    }
  }
  for (const auto& g : group) {
    EXPECT_TRUE(commutes(g, code.logical_x().front()));
    EXPECT_TRUE(commutes(g, code.logical_z().front()));
  }
}

TEST(Syndrome, Examples) {
  const StabilizerCode code = five_qubit_code();
  EXPECT_TRUE(syndrome(code, PauliString(5)).is_trivial());
  const Syndrome s = syndrome(code, PauliString::single(5, 0, 'X'));
  EXPECT_EQ(s.str(), "0001");
  EXPECT_EQ(s.bits, symplectic_syndrome(code.generators(), PauliString::single(5, 0, 'X')));
  EXPECT_THROW(syndrome(code, L("XX")), ArgumentError);
}

TEST(Syndrome, SingleQubitErrorsAreABijection) {
  const StabilizerCode code = five_qubit_code();
  std::set<std::uint64_t> seen;
  for (const auto& e : single_qubit_errors(5)) {
    const Syndrome s = syndrome(code, e);
    EXPECT_EQ(s.bits, symplectic_syndrome(code.generators(), e));
    EXPECT_FALSE(s.is_trivial());
    seen.insert(s.bits);
  }
  EXPECT_EQ(seen.size(), 15u);
}

TEST(Syndrome, XorProperty) {
  const StabilizerCode code = five_qubit_code();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const auto a = qsed::testing::random_pauli(5, rng);
    const auto b = qsed::testing::random_pauli(5, rng);
    EXPECT_EQ(syndrome(code, a * b), syndrome(code, a) ^ syndrome(code, b));
  }
}

TEST(SyndromeTable, EmptyErrorSet) {
  const StabilizerCode code = five_qubit_code();
  const SyndromeTable table = build_syndrome_table(code, std::vector<PauliString>{});
  ASSERT_EQ(table.size(), 1u);
  EXPECT_TRUE(table.entries()[0].recovery.is_identity_up_to_phase());
  EXPECT_NE(table.recovery_for(Syndrome{0, 4}), nullptr);
  EXPECT_EQ(table.recovery_for(Syndrome{1, 4}), nullptr);
}

TEST(SyndromeTable, CompleteWeightOneTable) {
  const StabilizerCode code = five_qubit_code();
  const SyndromeTable table = build_syndrome_table(code);
  ASSERT_EQ(table.size(), 16u);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const PauliString* r = table.recovery_for(Syndrome{bits, 4});
    ASSERT_NE(r, nullptr) << bits;
    EXPECT_EQ(syndrome(code, *r).bits, bits);
  }
  for (const auto& e : table.entries()) {
    EXPECT_EQ(syndrome(code, e.recovery), e.syndrome);
    for (const auto& g : code.generators()) EXPECT_TRUE(commutes(e.recovery * e.error, g));
  }
  const auto b = table.default_sampling_weights();
  for (double v : b) EXPECT_NEAR(v, 1.0 / 16.0, 1e-15);
}

TEST(SyndromeTable, CollisionIsAmbiguous) {
  const StabilizerCode code = five_qubit_code();
  // X0 and X0 * S_1 share a syndrome.
  const PauliString x0 = PauliString::single(5, 0, 'X');
  const PauliString twin = x0 * code.generators()[1];
  EXPECT_THROW(build_syndrome_table(code, std::vector<PauliString>{x0, twin}), AmbiguityError);
  // A stabilizer element collides with the identity.
  EXPECT_THROW(build_syndrome_table(code, std::vector<PauliString>{code.generators()[0]}),
               AmbiguityError);
}

TEST(SymplecticRank, Basics) {
  const std::vector<PauliString> ops{L("XX"), L("ZZ"), L("YY")};
  EXPECT_EQ(symplectic_rank(ops), 2u);
  EXPECT_EQ(symplectic_rank(five_qubit_code().generators()), 4u);
}
