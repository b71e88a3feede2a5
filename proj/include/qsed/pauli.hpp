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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsed/errors.hpp"

namespace qsed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest register that may be realized as a dense matrix by default.
inline constexpr std::size_t kDefaultMaxDenseQubits = 12;

/// Largest register a PauliString can describe (one bit per qubit in a word).
inline constexpr std::size_t kMaxPauliQubits = 64;

/// An n-qubit Pauli operator `phase * P_0 (x) P_1 (x) ... (x) P_{n-1}`.
///
/// Each qubit carries an (x, z) bit pair: (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z.
/// The phase is i^k for k in Z4 and multiplies the tensor product of the
/// Hermitian single-qubit matrices, so the label "Y" means the Y matrix.
///
/// Qubit 0 is the leftmost label character and the most significant tensor
/// factor. Internally qubit q lives at bit (n - 1 - q) of the masks, which
/// makes the masks line up with computational-basis indices.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on `n_qubits` qubits.
  explicit PauliString(std::size_t n_qubits);

  /// Raw constructor from basis-index-aligned masks and phase exponent.
  PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase_exponent = 0);

  /// Parses e.g. "XZZXI", "-YY", "+iXZ". Throws ParseError.
  static PauliString from_label(std::string_view label);

  /// Single-qubit Pauli `which` (one of I, X, Y, Z) acting on `qubit`.
  static PauliString single(std::size_t n_qubits, std::size_t qubit, char which);

  std::size_t n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool x(std::size_t qubit) const { return (x_ >> bit_of(qubit)) & 1u; }
  bool z(std::size_t qubit) const { return (z_ >> bit_of(qubit)) & 1u; }
  char pauli_at(std::size_t qubit) const;

  /// Exponent k of the phase i^k, in [0, 4).
  int phase_exponent() const { return phase_; }
  Complex phase() const;
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  bool is_identity_up_to_phase() const { return x_ == 0 && z_ == 0; }

  PauliString with_phase_exponent(int k) const;
  PauliString adjoint() const;
  PauliString negated() const { return with_phase_exponent(phase_ + 2); }

  /// Label with an explicit phase prefix: "+XZ", "-iYY", ...
  std::string str() const;
  /// Label without phase: "XZ".
  std::string letters() const;

  /// Phase exponent of the X^x Z^z ordering, i.e. P = i^k X^x Z^z.
  int xz_phase_exponent() const {
    return (phase_ + std::popcount(x_ & z_)) & 3;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

  /// Ordering on the operator part only (x bits, then z bits, qubit 0 first).
  static bool operator_less(const PauliString& a, const PauliString& b);
  static bool same_operator(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

 private:
  std::size_t bit_of(std::size_t qubit) const { return n_ - 1 - qubit; }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// Exact operator product a*b. Throws DimensionError on size mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

bool commutes(const PauliString& a, const PauliString& b);

/// Number of qubits acted on non-trivially.
std::size_t weight(const PauliString& a);

/// Complex-weighted sum of PauliStrings on a common register.
class PauliSum {
 public:
  struct Term {
    Complex coefficient;
    PauliString op;
  };

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}
  PauliSum(const PauliString& op, Complex coefficient = 1.0);

  /// Parses "<label> <coefficient>" lines with '#' comments.
  static PauliSum from_text(std::string_view text);
  /// Parses a compact form "0.5*XX - 0.25*ZZ + YI".
  static PauliSum from_expression(std::string_view expr);
  static PauliSum identity(std::size_t n_qubits, Complex coefficient = 1.0);

  std::size_t n_qubits() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(Complex coefficient, const PauliString& op);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  /// Phases folded into coefficients, duplicates merged, terms with
  /// |coefficient| <= tolerance dropped, sorted by (x bits, z bits).
  PauliSum canonical(double tolerance = 1e-14) const;
  PauliSum adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;

  /// `coefficient label` per line, canonical order.
  std::string to_text() const;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(Complex s, PauliSum a);

/// Dense 2^n x 2^n realization. Throws ResourceError above `max_qubits`.
template <typename Scalar = Complex>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const PauliString& p, std::size_t max_qubits = kDefaultMaxDenseQubits);

template <typename Scalar = Complex>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const PauliSum& s, std::size_t max_qubits = kDefaultMaxDenseQubits);

namespace detail {

inline Complex i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double parity_sign(std::uint64_t v) {
  return (std::popcount(v) & 1) ? -1.0 : 1.0;
}

void check_dense_size(std::size_t n_qubits, std::size_t max_qubits);

}  // namespace detail

/// Tr[A P] in O(2^n) without forming P.
template <typename Derived>
Complex pauli_trace(const Eigen::MatrixBase<Derived>& a, const PauliString& p) {
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  if (static_cast<std::uint64_t>(a.rows()) != dim ||
      static_cast<std::uint64_t>(a.cols()) != dim) {
    throw DimensionError("pauli_trace: matrix does not match Pauli size");
  }
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  Complex acc = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    acc += Complex(a(b, b ^ x)) * detail::parity_sign(z & b);
  }
  return acc * detail::i_pow(p.xz_phase_exponent());
}

/// P * A.
template <typename Derived>
Matrix apply_left(const PauliString& p, const Eigen::MatrixBase<Derived>& a) {
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  if (static_cast<std::uint64_t>(a.rows()) != dim) {
    throw DimensionError("apply_left: matrix does not match Pauli size");
  }
  const Complex ph = detail::i_pow(p.xz_phase_exponent());
  Matrix out(a.rows(), a.cols());
  for (std::uint64_t r = 0; r < dim; ++r) {
    const std::uint64_t src = r ^ p.x_mask();
    out.row(r) = (ph * detail::parity_sign(p.z_mask() & src)) * a.row(src);
  }
  return out;
}

/// A * P.
template <typename Derived>
Matrix apply_right(const Eigen::MatrixBase<Derived>& a, const PauliString& p) {
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  if (static_cast<std::uint64_t>(a.cols()) != dim) {
    throw DimensionError("apply_right: matrix does not match Pauli size");
  }
  const Complex ph = detail::i_pow(p.xz_phase_exponent());
  Matrix out(a.rows(), a.cols());
  for (std::uint64_t c = 0; c < dim; ++c) {
    const std::uint64_t src = c ^ p.x_mask();
    out.col(c) = (ph * detail::parity_sign(p.z_mask() & c)) * a.col(src);
  }
  return out;
}

/// P * A * P^dagger; the phase of P drops out.
template <typename Derived>
Matrix conjugate(const PauliString& p, const Eigen::MatrixBase<Derived>& a) {
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  if (static_cast<std::uint64_t>(a.rows()) != dim ||
      static_cast<std::uint64_t>(a.cols()) != dim) {
    throw DimensionError("conjugate: matrix does not match Pauli size");
  }
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  Matrix out(dim, dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double sc = detail::parity_sign(z & (c ^ x));
    for (std::uint64_t r = 0; r < dim; ++r) {
      out(r, c) = (sc * detail::parity_sign(z & (r ^ x))) * a(r ^ x, c ^ x);
    }
  }
  return out;
}

// Template definitions.

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const PauliString& p, std::size_t max_qubits) {
  detail::check_dense_size(p.n_qubits(), max_qubits);
  const std::uint64_t dim = std::uint64_t{1} << p.n_qubits();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  const Complex ph = detail::i_pow(p.xz_phase_exponent());
  for (std::uint64_t b = 0; b < dim; ++b) {
    m(b ^ p.x_mask(), b) = Scalar(ph * detail::parity_sign(p.z_mask() & b));
  }
  return m;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const PauliSum& s, std::size_t max_qubits) {
  detail::check_dense_size(s.n_qubits(), max_qubits);
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  for (const auto& t : s.terms()) {
    const PauliString& p = t.op;
    const Complex ph = t.coefficient * detail::i_pow(p.xz_phase_exponent());
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ p.x_mask(), b) += Scalar(ph * detail::parity_sign(p.z_mask() & b));
    }
  }
  return m;
}

}  // namespace qsed
