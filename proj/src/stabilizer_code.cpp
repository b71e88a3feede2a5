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

#include <algorithm>
#include <numeric>

#include "qsed/text.hpp"

namespace qsed {

std::string Syndrome::str() const {
  std::string s(length, '0');
  for (std::size_t j = 0; j < length; ++j) {
    if ((*this)[j]) s[j] = '1';
  }
  return s;
}

std::size_t symplectic_rank(std::span<const PauliString> ops) {
  // Rows packed as (x << n) | z would overflow for n > 32; keep two words.
  struct Row {
    std::uint64_t x, z;
  };
  std::vector<Row> rows;
  rows.reserve(ops.size());
  for (const auto& p : ops) rows.push_back({p.x_mask(), p.z_mask()});
  std::size_t rank = 0;
  for (int word = 0; word < 2; ++word) {
    for (int bit = 63; bit >= 0; --bit) {
      const std::uint64_t mask = std::uint64_t{1} << bit;
      auto sel = [&](const Row& r) { return (word == 0 ? r.x : r.z) & mask; };
      auto pivot = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(), sel);
      if (pivot == rows.end()) continue;
      std::iter_swap(rows.begin() + static_cast<long>(rank), pivot);
      const Row p = rows[rank];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != rank && sel(rows[i])) {
          rows[i].x ^= p.x;
          rows[i].z ^= p.z;
        }
      }
      ++rank;
    }
  }
  return rank;
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

StabilizerCode::StabilizerCode(std::size_t n, std::size_t k,
                               std::optional<std::size_t> d,
                               std::vector<PauliString> generators,
                               std::vector<PauliString> logical_x,
                               std::vector<PauliString> logical_z,
                               std::vector<CorrectableError> errors)
    : n_(n),
      k_(k),
      d_(d),
      generators_(std::move(generators)),
      logical_x_(std::move(logical_x)),
      logical_z_(std::move(logical_z)),
      errors_(std::move(errors)) {
  require(n_ >= 1 && n_ <= kMaxPauliQubits, "n must be in [1, 64]");
  require(k_ >= 1, "k must be at least 1");
  require(logical_x_.size() == k_, "expected k logical_x operators");
  require(logical_z_.size() == k_, "expected k logical_z operators");
  require(generators_.size() + k_ == n_,
          "stabilizer code needs n - k generators, got " +
              std::to_string(generators_.size()));
  auto check_op = [&](const PauliString& p, const std::string& what) {
    require(p.n_qubits() == n_, what + " " + p.str() + " does not act on n qubits");
    require(p.is_hermitian(), what + " " + p.str() + " is not Hermitian");
  };
  for (const auto& g : generators_) {
    check_op(g, "generator");
    require(!g.is_identity_up_to_phase(), "generator " + g.str() + " is trivial");
  }
  for (const auto& l : logical_x_) check_op(l, "logical_x");
  for (const auto& l : logical_z_) check_op(l, "logical_z");

  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      require(commutes(generators_[i], generators_[j]),
              "generators " + generators_[i].str() + " and " +
                  generators_[j].str() + " anticommute");
    }
  }
  require(symplectic_rank(generators_) == generators_.size(),
          "generators are not independent");
  for (const auto& g : generators_) {
    for (std::size_t i = 0; i < k_; ++i) {
      require(commutes(g, logical_x_[i]) && commutes(g, logical_z_[i]),
              "logical operators must commute with generator " + g.str());
    }
  }
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) {
      const bool xz = commutes(logical_x_[i], logical_z_[j]);
      require(i == j ? !xz : xz,
              "logical_x[" + std::to_string(i) + "] / logical_z[" +
                  std::to_string(j) + "] have the wrong commutation");
      if (i < j) {
        require(commutes(logical_x_[i], logical_x_[j]) &&
                    commutes(logical_z_[i], logical_z_[j]),
                "logical operators of different qubits must commute");
      }
    }
  }

  errors_declared_ = !errors_.empty();
  if (!errors_declared_) {
    for (auto& e : single_qubit_errors(n_)) errors_.push_back({e, std::nullopt});
  }
  for (const auto& e : errors_) check_op(e.op, "error");
}

std::vector<PauliString> single_qubit_errors(std::size_t n) {
  std::vector<PauliString> out;
  out.reserve(3 * n);
  for (std::size_t q = 0; q < n; ++q) {
    for (char c : {'X', 'Y', 'Z'}) out.push_back(PauliString::single(n, q, c));
  }
  return out;
}

StabilizerCode load_code(std::string_view text) {
  std::optional<std::size_t> n, k, d;
  std::vector<PauliString> gens, lx, lz;
  std::vector<CorrectableError> errors;
  std::vector<std::size_t> gen_lines;

  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> ValidationError {
    return ValidationError("line " + std::to_string(line_no) + ": " + msg);
  };
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;
    const auto f = split_ws(line);
    const std::string_view key = f[0];
    try {
      auto parse_size = [&]() -> std::size_t {
        if (f.size() != 2) throw fail("expected '" + std::string(key) + " <int>'");
        const long long v = parse_int(f[1]);
        if (v < 0) throw fail(std::string(key) + " must be non-negative");
        return static_cast<std::size_t>(v);
      };
      auto parse_op = [&]() -> PauliString {
        if (f.size() < 2) throw fail("missing Pauli label");
        PauliString p = PauliString::from_label(f[1]);
        if (n && p.n_qubits() != *n) {
          throw fail("label " + std::string(f[1]) + " has length " +
                     std::to_string(p.n_qubits()) + ", expected n = " +
                     std::to_string(*n));
        }
        return p;
      };
      if (key == "n") {
        n = parse_size();
      } else if (key == "k") {
        k = parse_size();
      } else if (key == "d") {
        d = parse_size();
      } else if (key == "stabilizer") {
        if (f.size() != 2) throw fail("expected 'stabilizer <label>'");
        PauliString g = parse_op();
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (!commutes(gens[i], g)) {
            throw fail("stabilizer " + g.str() + " anticommutes with " +
                       gens[i].str() + " (line " + std::to_string(gen_lines[i]) +
                       ")");
          }
        }
        gens.push_back(g);
        gen_lines.push_back(line_no);
        if (symplectic_rank(gens) != gens.size()) {
          throw fail("stabilizer " + g.str() +
                     " is dependent on the preceding generators");
        }
      } else if (key == "logical_x") {
        if (f.size() != 2) throw fail("expected 'logical_x <label>'");
        lx.push_back(parse_op());
      } else if (key == "logical_z") {
        if (f.size() != 2) throw fail("expected 'logical_z <label>'");
        lz.push_back(parse_op());
      } else if (key == "error") {
        if (f.size() != 2 && f.size() != 3) throw fail("expected 'error <label> [prior]'");
        CorrectableError e{parse_op(), std::nullopt};
        if (f.size() == 3) {
          const double prior = parse_double(f[2]);
          if (!(prior > 0.0)) throw fail("error prior must be positive");
          e.prior = prior;
        }
        errors.push_back(e);
      } else {
        throw fail("unknown directive '" + std::string(key) + "'");
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  line_no = 0;
  if (!n) throw ValidationError("missing 'n' directive");
  if (!k) throw ValidationError("missing 'k' directive");
  if (*k < 1) throw ValidationError("k must be at least 1");
  return StabilizerCode(*n, *k, d, std::move(gens), std::move(lx), std::move(lz),
                        std::move(errors));
}

StabilizerCode load_code_file(const std::string& path) {
  try {
    return load_code(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

StabilizerCode five_qubit_code() {
  return load_code(R"(
n 5
k 1
d 3
stabilizer XZZXI
stabilizer IXZZX
stabilizer XIXZZ
stabilizer ZXIXZ
logical_x XXXXX
logical_z ZZZZZ
)");
}

std::vector<PauliString> hierarchy_group(std::span<const PauliString> generators,
                                         std::size_t l) {
  if (l > generators.size()) {
    throw ArgumentError("hierarchy level " + std::to_string(l) +
                        " exceeds the number of generators (" +
                        std::to_string(generators.size()) + ")");
  }
  if (l >= 63) throw ResourceError("hierarchy too large to enumerate");
  if (generators.empty()) {
    throw ArgumentError("hierarchy_group: register size unknown without generators");
  }
  std::vector<PauliString> out;
  out.reserve(std::size_t{1} << l);
  out.emplace_back(generators[0].n_qubits());
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t half = out.size();
    for (std::size_t c = 0; c < half; ++c) out.push_back(multiply(out[c], generators[i]));
  }
  return out;
}

std::vector<PauliString> hierarchy_group(const StabilizerCode& code, std::size_t l) {
  if (code.m() == 0) {
    if (l != 0) throw ArgumentError("hierarchy level exceeds m = 0");
    return {PauliString(code.n())};
  }
  return hierarchy_group(code.generators(), l);
}

Syndrome syndrome(std::span<const PauliString> generators, const PauliString& e) {
  Syndrome s{0, generators.size()};
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].n_qubits() != e.n_qubits()) {
      throw ArgumentError("syndrome: error acts on " + std::to_string(e.n_qubits()) +
                          " qubits, code on " +
                          std::to_string(generators[j].n_qubits()));
    }
    if (!commutes(generators[j], e)) s.bits |= std::uint64_t{1} << j;
  }
  return s;
}

Syndrome syndrome(const StabilizerCode& code, const PauliString& e) {
  if (e.n_qubits() != code.n()) {
    throw ArgumentError("syndrome: error acts on " + std::to_string(e.n_qubits()) +
                        " qubits, code on " + std::to_string(code.n()));
  }
  return syndrome(code.generators(), e);
}

SyndromeTable::SyndromeTable(std::size_t m, std::vector<Entry> entries)
    : m_(m), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto [it, inserted] = index_.emplace(entries_[i].syndrome, i);
    if (!inserted) {
      throw AmbiguityError("errors " + entries_[it->second].error.str() + " and " +
                           entries_[i].error.str() + " share syndrome " +
                           entries_[i].syndrome.str());
    }
  }
}

const PauliString* SyndromeTable::recovery_for(const Syndrome& s) const {
  const auto it = index_.find(s);
  return it == index_.end() ? nullptr : &entries_[it->second].recovery;
}

std::vector<double> SyndromeTable::default_sampling_weights() const {
  std::vector<double> b(entries_.size(), 1.0 / static_cast<double>(entries_.size()));
  // The identity entry never carries a declared prior; priors are complete
  // when every non-identity entry has one.
  const bool have_priors =
      entries_.size() > 1 &&
      std::all_of(entries_.begin() + 1, entries_.end(),
                  [](const Entry& e) { return e.prior.has_value(); });
  if (!have_priors) return b;
  const double error_mass = std::accumulate(
      entries_.begin() + 1, entries_.end(), 0.0,
      [](double acc, const Entry& e) { return acc + *e.prior; });
  // Identity receives the remaining mass when priors sum below one, else an
  // equal share so that every b_alpha stays positive.
  const double id_mass = error_mass < 1.0 ? 1.0 - error_mass
                                          : error_mass / static_cast<double>(entries_.size() - 1);
  const double total = error_mass + id_mass;
  b[0] = id_mass / total;
  for (std::size_t i = 1; i < entries_.size(); ++i) b[i] = *entries_[i].prior / total;
  return b;
}

SyndromeTable build_syndrome_table(const StabilizerCode& code,
                                   std::span<const CorrectableError> errors) {
  std::vector<SyndromeTable::Entry> entries;
  entries.reserve(errors.size() + 1);
  const PauliString id(code.n());
  entries.push_back({syndrome(code, id), id, id, std::nullopt});
  for (const auto& e : errors) {
    if (e.op.is_identity_up_to_phase()) continue;
    for (const auto& prev : entries) {
      if (PauliString::same_operator(prev.error, e.op)) {
        throw AmbiguityError("error " + e.op.str() + " listed twice");
      }
    }
    const PauliString op = e.op.with_phase_exponent(0);
    entries.push_back({syndrome(code, op), op, op, e.prior});
  }
  return SyndromeTable(code.m(), std::move(entries));
}

SyndromeTable build_syndrome_table(const StabilizerCode& code,
                                   std::span<const PauliString> errors) {
  std::vector<CorrectableError> list;
  list.reserve(errors.size());
  for (const auto& e : errors) list.push_back({e, std::nullopt});
  return build_syndrome_table(code, list);
}

SyndromeTable build_syndrome_table(const StabilizerCode& code) {
  return build_syndrome_table(code, std::span<const CorrectableError>(code.correctable_errors()));
}

}  // namespace qsed
