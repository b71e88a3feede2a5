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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qsed/text.hpp"

namespace qsed {

namespace detail {

void check_dense_size(std::size_t n_qubits, std::size_t max_qubits) {
  if (n_qubits > max_qubits) {
    throw ResourceError("dense realization of " + std::to_string(n_qubits) +
                        " qubits exceeds the limit of " +
                        std::to_string(max_qubits));
  }
}

}  // namespace detail

namespace {

void check_size(std::size_t n) {
  if (n > kMaxPauliQubits) {
    throw ResourceError("PauliString supports at most 64 qubits");
  }
}

void check_same_size(const PauliString& a, const PauliString& b,
                     const char* what) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(std::string(what) + ": operands act on " +
                         std::to_string(a.n_qubits()) + " and " +
                         std::to_string(b.n_qubits()) + " qubits");
  }
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : n_(n_qubits) {
  check_size(n_qubits);
}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, int phase_exponent)
    : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(phase_exponent & 3) {
  check_size(n_qubits);
  const std::uint64_t valid =
      n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  if ((x_mask | z_mask) & ~valid) {
    throw ArgumentError("PauliString: mask has bits beyond the register");
  }
}

PauliString PauliString::from_label(std::string_view label) {
  std::string_view body = trim(label);
  int phase = 0;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    if (body.front() == '-') phase = 2;
    body.remove_prefix(1);
    if (!body.empty() && body.front() == 'i') {
      phase += 1;
      body.remove_prefix(1);
    }
  }
  if (body.empty()) {
    throw ParseError("empty Pauli label '" + std::string(label) + "'");
  }
  check_size(body.size());
  PauliString p(body.size());
  p.phase_ = phase & 3;
  for (std::size_t q = 0; q < body.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << p.bit_of(q);
    switch (body[q]) {
      case 'I': break;
      case 'X': p.x_ |= bit; break;
      case 'Y': p.x_ |= bit; p.z_ |= bit; break;
      case 'Z': p.z_ |= bit; break;
      default:
        throw ParseError("invalid character '" + std::string(1, body[q]) +
                         "' in Pauli label '" + std::string(label) + "'");
    }
  }
  return p;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit,
                                char which) {
  if (qubit >= n_qubits) {
    throw ArgumentError("PauliString::single: qubit index out of range");
  }
  std::string label(n_qubits, 'I');
  label[qubit] = which;
  return from_label(label);
}

char PauliString::pauli_at(std::size_t qubit) const {
  static constexpr char kNames[] = {'I', 'X', 'Z', 'Y'};
  return kNames[(x(qubit) ? 1 : 0) | (z(qubit) ? 2 : 0)];
}

Complex PauliString::phase() const { return detail::i_pow(phase_); }

PauliString PauliString::with_phase_exponent(int k) const {
  PauliString out = *this;
  out.phase_ = ((k % 4) + 4) % 4;
  return out;
}

PauliString PauliString::adjoint() const {
  // Hermitian letters; only the phase conjugates.
  return with_phase_exponent(-phase_);
}

std::string PauliString::letters() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_at(q);
  return s;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

bool PauliString::operator_less(const PauliString& a, const PauliString& b) {
  // Qubit 0 is the most significant bit, so integer order is lexicographic.
  if (a.x_ != b.x_) return a.x_ < b.x_;
  return a.z_ < b.z_;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_size(a, b, "multiply");
  // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int xz = a.xz_phase_exponent() + b.xz_phase_exponent() +
                 2 * std::popcount(a.z_mask() & b.x_mask());
  return PauliString(a.n_qubits(), x, z, xz - std::popcount(x & z));
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_size(a, b, "commutes");
  const int s = std::popcount(a.x_mask() & b.z_mask()) +
                std::popcount(a.z_mask() & b.x_mask());
  return (s & 1) == 0;
}

std::size_t weight(const PauliString& a) {
  return static_cast<std::size_t>(std::popcount(a.x_mask() | a.z_mask()));
}

// PauliSum

PauliSum::PauliSum(const PauliString& op, Complex coefficient)
    : n_(op.n_qubits()) {
  terms_.push_back({coefficient, op});
}

PauliSum PauliSum::identity(std::size_t n_qubits, Complex coefficient) {
  return PauliSum(PauliString(n_qubits), coefficient);
}

void PauliSum::add(Complex coefficient, const PauliString& op) {
  if (terms_.empty() && n_ == 0) n_ = op.n_qubits();
  if (op.n_qubits() != n_) {
    throw DimensionError("PauliSum: term acts on " +
                         std::to_string(op.n_qubits()) + " qubits, sum on " +
                         std::to_string(n_));
  }
  terms_.push_back({coefficient, op});
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& t : other.terms_) add(t.coefficient, t.op);
  if (n_ == 0) n_ = other.n_;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  return *this;
}

PauliSum PauliSum::canonical(double tolerance) const {
  std::vector<Term> folded;
  folded.reserve(terms_.size());
  for (const auto& t : terms_) {
    folded.push_back({t.coefficient * t.op.phase(), t.op.with_phase_exponent(0)});
  }
  std::stable_sort(folded.begin(), folded.end(), [](const Term& a, const Term& b) {
    return PauliString::operator_less(a.op, b.op);
  });
  PauliSum out(n_);
  for (const auto& t : folded) {
    if (!out.terms_.empty() && PauliString::same_operator(out.terms_.back().op, t.op)) {
      out.terms_.back().coefficient += t.coefficient;
    } else {
      out.terms_.push_back(t);
    }
  }
  std::erase_if(out.terms_, [tolerance](const Term& t) {
    return std::abs(t.coefficient) <= tolerance;
  });
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& t : terms_) {
    out.terms_.push_back({std::conj(t.coefficient), t.op.adjoint()});
  }
  return out;
}

bool PauliSum::is_hermitian(double tolerance) const {
  const PauliSum diff = (*this + (-1.0) * adjoint()).canonical(tolerance);
  return diff.empty();
}

std::string PauliSum::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : canonical().terms_) {
    os << t.op.letters() << ' ' << t.coefficient.real();
    if (t.coefficient.imag() != 0.0) {
      os << (t.coefficient.imag() < 0 ? "" : "+") << t.coefficient.imag() << 'i';
    }
    os << '\n';
  }
  return os.str();
}

PauliSum PauliSum::from_text(std::string_view text) {
  PauliSum out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = strip_comment(line);
    if (line.empty()) continue;
    const auto fields = split_ws(line);
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected '<pauli-label> <coefficient>'");
    }
    try {
      out.add(parse_double(fields[1]), PauliString::from_label(fields[0]));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.terms_.empty()) throw ParseError("Pauli sum has no terms");
  return out;
}

PauliSum PauliSum::from_expression(std::string_view expr) {
  PauliSum out;
  std::vector<std::string> pieces;
  // Split on top-level '+'/'-' that start a new term (not a label phase).
  std::string s(trim(expr));
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool sign = (c == '+' || c == '-');
    const bool after_e = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E');
    if (sign && !after_e && !trim(current).empty()) {
      pieces.push_back(current);
      current.clear();
    }
    current.push_back(c);
  }
  if (!trim(current).empty()) pieces.push_back(current);
  for (const auto& raw : pieces) {
    std::string piece;
    for (char c : raw) {
      if (!std::isspace(static_cast<unsigned char>(c))) piece.push_back(c);
    }
    double sign = 1.0;
    if (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      if (piece[0] == '-') sign = -1.0;
      piece.erase(0, 1);
    }
    double coeff = 1.0;
    std::string label = piece;
    if (const auto star = piece.find('*'); star != std::string::npos) {
      coeff = parse_double(piece.substr(0, star));
      label = piece.substr(star + 1);
    }
    out.add(sign * coeff, PauliString::from_label(label));
  }
  if (out.terms_.empty()) throw ParseError("empty Pauli expression");
  return out;
}

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  PauliSum out(a.n_qubits());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.add(ta.coefficient * tb.coefficient, multiply(ta.op, tb.op));
    }
  }
  return out;
}

PauliSum operator*(Complex s, PauliSum a) {
  a *= s;
  return a;
}

}  // namespace qsed
