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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsed/pauli.hpp"

namespace qsed {

/// Anticommutation pattern of an operator against m ordered generators.
/// Bit j is set iff the operator anticommutes with generator j.
struct Syndrome {
  std::uint64_t bits = 0;
  std::size_t length = 0;

  bool operator[](std::size_t j) const { return (bits >> j) & 1u; }
  bool is_trivial() const { return bits == 0; }
  /// "0101" with generator 0 first.
  std::string str() const;

  friend bool operator==(const Syndrome&, const Syndrome&) = default;
  friend auto operator<=>(const Syndrome&, const Syndrome&) = default;
  friend Syndrome operator^(Syndrome a, const Syndrome& b) {
    a.bits ^= b.bits;
    return a;
  }
};

/// A correctable error with an optional prior probability.
struct CorrectableError {
  PauliString op;
  std::optional<double> prior;
};

/// [[n, k, d]] stabilizer code with ordered generators and logical operators.
class StabilizerCode {
 public:
  /// Validates every invariant; throws ValidationError.
  StabilizerCode(std::size_t n, std::size_t k, std::optional<std::size_t> d,
                 std::vector<PauliString> generators,
                 std::vector<PauliString> logical_x,
                 std::vector<PauliString> logical_z,
                 std::vector<CorrectableError> errors = {});

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t m() const { return generators_.size(); }
  std::optional<std::size_t> d() const { return d_; }
  const std::vector<PauliString>& generators() const { return generators_; }
  const std::vector<PauliString>& logical_x() const { return logical_x_; }
  const std::vector<PauliString>& logical_z() const { return logical_z_; }

  /// Correctable errors declared in the code file; when none were declared,
  /// every weight-1 Pauli.
  const std::vector<CorrectableError>& correctable_errors() const {
    return errors_;
  }
  bool errors_declared() const { return errors_declared_; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::optional<std::size_t> d_;
  std::vector<PauliString> generators_;
  std::vector<PauliString> logical_x_;
  std::vector<PauliString> logical_z_;
  std::vector<CorrectableError> errors_;
  bool errors_declared_ = false;
};

/// Parses the line-oriented code format (see docs/formats.md).
StabilizerCode load_code(std::string_view text);
StabilizerCode load_code_file(const std::string& path);

/// The bundled [[5,1,3]] code.
StabilizerCode five_qubit_code();

/// Elements S_chi = S_1^chi_1 ... S_l^chi_l of the group generated by the
/// first l generators. Element index chi has bit (i-1) set when S_i is a
/// factor, so index 0 is the identity and index 1 is S_1.
std::vector<PauliString> hierarchy_group(std::span<const PauliString> generators,
                                         std::size_t l);
std::vector<PauliString> hierarchy_group(const StabilizerCode& code, std::size_t l);

Syndrome syndrome(std::span<const PauliString> generators, const PauliString& e);
Syndrome syndrome(const StabilizerCode& code, const PauliString& e);

/// All 3n weight-1 Paulis, qubit-major with X, Y, Z per qubit.
std::vector<PauliString> single_qubit_errors(std::size_t n);

/// Lookup from syndrome to recovery operator.
class SyndromeTable {
 public:
  struct Entry {
    Syndrome syndrome;
    PauliString error;
    PauliString recovery;
    std::optional<double> prior;
  };

  SyndromeTable() = default;
  SyndromeTable(std::size_t m, std::vector<Entry> entries);

  std::size_t m() const { return m_; }
  /// Entries in insertion order; entry 0 is the identity.
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const PauliString* recovery_for(const Syndrome& s) const;

  /// b_alpha: priors normalized when every entry has one, else uniform.
  std::vector<double> default_sampling_weights() const;

 private:
  std::size_t m_ = 0;
  std::vector<Entry> entries_;
  std::map<Syndrome, std::size_t> index_;
};

/// Identity plus one entry per error with R = E. Throws AmbiguityError when
/// two errors (or an error and the identity) share a syndrome.
SyndromeTable build_syndrome_table(const StabilizerCode& code,
                                   std::span<const CorrectableError> errors);
SyndromeTable build_syndrome_table(const StabilizerCode& code,
                                   std::span<const PauliString> errors);
/// Uses the code's declared (or default weight-1) error set.
SyndromeTable build_syndrome_table(const StabilizerCode& code);

/// Rank over GF(2) of the symplectic rows (x | z).
std::size_t symplectic_rank(std::span<const PauliString> ops);

}  // namespace qsed
