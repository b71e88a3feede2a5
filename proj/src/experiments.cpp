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

#include "qsed/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qsed/projection.hpp"
#include "qsed/qse.hpp"
#include "qsed/text.hpp"

namespace qsed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string bundled(const char* rel) { return std::string(QSED_DATA_DIR) + "/" + rel; }

}  // namespace

void SweepConfig::validate() const {
  if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) {
    throw ArgumentError("need 0 <= p-min <= p-max <= 1");
  }
  if (steps < 2) throw ArgumentError("steps must be at least 2");
  if (grid == GridKind::log && !(p_min > 0.0)) {
    throw ArgumentError("a log grid needs p-min > 0 (use --grid linear)");
  }
  if (drop_trials == 0) throw ArgumentError("drop-trials must be positive");
}

std::vector<double> make_grid(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<double> p(cfg.steps);
  const double last = static_cast<double>(cfg.steps - 1);
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    const double t = static_cast<double>(i) / last;
    p[i] = cfg.grid == GridKind::log
               ? std::exp(std::log(cfg.p_min) + t * (std::log(cfg.p_max) - std::log(cfg.p_min)))
               : cfg.p_min + t * (cfg.p_max - cfg.p_min);
  }
  p.front() = cfg.p_min;
  p.back() = cfg.p_max;
  return p;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ArgumentError("no column named '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> Table::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_number(r[i]);
    }
    out += '\n';
  }
  return out;
}

std::optional<double> find_crossover(const std::vector<double>& p,
                                     const std::vector<double>& curve,
                                     const std::vector<double>& reference) {
  if (p.size() != curve.size() || p.size() != reference.size()) {
    throw DimensionError("find_crossover: length mismatch");
  }
  auto gap = [&](std::size_t i) {
    constexpr double floor = 1e-300;
    return std::log(std::max(curve[i], floor)) - std::log(std::max(reference[i], floor));
  };
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (std::isnan(curve[i]) || std::isnan(curve[i + 1])) continue;
    const double a = gap(i), b = gap(i + 1);
    if (a <= 0.0 && b > 0.0) {
      return p[i] + (p[i + 1] - p[i]) * (-a) / (b - a);
    }
  }
  return std::nullopt;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

StabilizerCode load_code_or_default(const std::string& path) {
  return path.empty() ? five_qubit_code() : load_code_file(path);
}

namespace {

std::vector<std::size_t> resolve_levels(const std::vector<std::size_t>& levels,
                                        std::size_t max_level) {
  std::vector<std::size_t> out = levels;
  if (out.empty()) {
    out.resize(max_level + 1);
    std::iota(out.begin(), out.end(), std::size_t{0});
  }
  for (std::size_t l : out) {
    if (l > max_level) {
      throw ArgumentError("level " + std::to_string(l) + " exceeds " +
                          std::to_string(max_level));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Indices 1..size-1 with `drop` of them removed at random; 0 (the
/// identity) is always kept.
std::vector<std::size_t> random_keep(std::size_t size, std::size_t drop, ShotRng& rng) {
  std::vector<std::size_t> pool(size - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  for (std::size_t i = 0; i < drop; ++i) {
    const auto span = static_cast<double>(pool.size() - i);
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * span);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> keep{0};
  keep.insert(keep.end(), pool.begin() + static_cast<std::ptrdiff_t>(drop), pool.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

SweepResult run_code_sweep(const SweepConfig& cfg, bool transversal) {
  const StabilizerCode code = load_code_or_default(cfg.code_path);
  const std::vector<std::size_t> levels = resolve_levels(cfg.levels, code.m());
  const std::vector<double> grid = make_grid(cfg);

  const StateVector psi = prepare_logical_state(code, cfg.theta, cfg.phi);
  PauliString x_all(code.n());
  for (std::size_t q = 0; q < code.n(); ++q) x_all = multiply(x_all, PauliString::single(code.n(), q, 'X'));
  const StateVector reference = transversal ? apply_pauli(psi, code.logical_x().front()) : psi;
  DensityMatrix start = DensityMatrix::from_pure(psi);
  if (transversal) start = apply_pauli(start, x_all);

  std::vector<std::size_t> star_levels;
  if (cfg.drop_count > 0) {
    for (std::size_t l : levels) {
      if ((std::size_t{1} << l) - 1 > cfg.drop_count) star_levels.push_back(l);
    }
  }

  SweepResult out;
  out.table.header = {"p", "physical", "bare"};
  for (std::size_t l : levels) out.table.header.push_back("level_" + std::to_string(l));
  for (std::size_t l : star_levels) {
    const std::string base = "star_l" + std::to_string(l);
    out.table.header.push_back(base + "_mean");
    out.table.header.push_back(base + "_min");
    out.table.header.push_back(base + "_max");
  }
  out.table.rows.resize(grid.size());
  std::vector<std::vector<std::string>> warnings(grid.size());

  parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
    const double p = grid[i];
    const DensityMatrix rho = depolarize_all(start, p);
    std::vector<double>& row = out.table.rows[i];
    row = {p, 2.0 * p / 3.0, 1.0 - fidelity(rho, reference)};
    for (std::size_t l : levels) {
      try {
        const CorrectionResult r = project_state(rho, code, l);
        row.push_back(1.0 - fidelity(*r.corrected_state, reference));
      } catch (const NoSupportError& e) {
        warnings[i].push_back("p=" + format_number(p) + " level " + std::to_string(l) +
                              ": " + e.what());
        row.push_back(kNaN);
      }
    }
    for (std::size_t l : star_levels) {
      const auto group = hierarchy_group(code, l);
      const PauliSum h = code_hamiltonian(code, l);
      ShotRng rng(cfg.seed, i * 64 + l);
      double sum = 0.0, lo = kNaN, hi = kNaN;
      std::size_t ok = 0;
      for (std::size_t t = 0; t < cfg.drop_trials; ++t) {
        std::vector<PauliString> ops;
        for (std::size_t k : random_keep(group.size(), cfg.drop_count, rng)) {
          ops.push_back(group[k]);
        }
        try {
          const QseCorrection c = qse_correct(QseProblem{std::move(ops), h, rho});
          const double inf = 1.0 - fidelity(c.corrected_state, reference);
          sum += inf;
          lo = ok == 0 ? inf : std::min(lo, inf);
          hi = ok == 0 ? inf : std::max(hi, inf);
          ++ok;
        } catch (const EmptySubspaceError& e) {
          warnings[i].push_back("p=" + format_number(p) + " star level " +
                                std::to_string(l) + ": " + e.what());
        }
      }
      row.push_back(ok ? sum / static_cast<double>(ok) : kNaN);
      row.push_back(lo);
      row.push_back(hi);
    }
  });

  for (auto& w : warnings) out.warnings.insert(out.warnings.end(), w.begin(), w.end());
  out.crossover_level = levels.back();
  out.crossover = find_crossover(grid, out.table.column_values("level_" + std::to_string(levels.back())),
                                 out.table.column_values("physical"));
  return out;
}

}  // namespace

SweepResult run_threshold(const SweepConfig& cfg) { return run_code_sweep(cfg, false); }

SweepResult run_transversal_x(const SweepConfig& cfg) { return run_code_sweep(cfg, true); }

namespace {

std::string dump_matrix(const Matrix& m) {
  std::ostringstream ss;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) ss << ' ';
      ss << format_number(m(r, c).real()) << ',' << format_number(m(r, c).imag());
    }
    ss << '\n';
  }
  return ss.str();
}

}  // namespace

MoleculeResult run_molecule(const MoleculeConfig& cfg) {
  const std::string path =
      cfg.hamiltonian_path.empty() ? bundled("data/h2_1.50A.ham") : cfg.hamiltonian_path;
  const PauliSum h = PauliSum::from_text(read_file(path));
  if (!h.is_hermitian()) throw ValidationError("Hamiltonian in '" + path + "' is not Hermitian");
  const std::size_t n = h.n_qubits();
  std::vector<PauliString> gens;
  for (const auto& label : cfg.generators) {
    PauliString g = PauliString::from_label(label);
    if (g.n_qubits() != n) {
      throw DimensionError("generator " + label + " does not match the " +
                           std::to_string(n) + "-qubit Hamiltonian");
    }
    gens.push_back(std::move(g));
  }
  const std::vector<std::size_t> levels = resolve_levels(cfg.sweep.levels, gens.size());
  const std::vector<double> grid = make_grid(cfg.sweep);

  MoleculeResult out;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(to_dense(h));
  out.exact_energy = eig.eigenvalues()(0);
  if (eig.eigenvalues().size() > 1 && eig.eigenvalues()(1) - out.exact_energy < 1e-8) {
    out.warnings.push_back("ground state is degenerate; using the first eigenvector");
  }
  const StateVector ground(eig.eigenvectors().col(0));
  const DensityMatrix start = DensityMatrix::from_pure(ground);

  out.table.header = {"p"};
  for (std::size_t l : levels) {
    const std::string s = std::to_string(l);
    for (const char* name : {"fid_l", "infid_l", "energy_l", "ratio_l"}) {
      out.table.header.push_back(name + s);
    }
  }
  out.table.rows.resize(grid.size());
  std::vector<std::string> dumps(grid.size());
  std::vector<std::vector<std::string>> warnings(grid.size());

  parallel_for(grid.size(), cfg.sweep.threads, [&](std::size_t i) {
    const double p = grid[i];
    const DensityMatrix rho = depolarize_all(start, p);
    const double bare = 1.0 - fidelity(rho, ground);
    std::vector<double>& row = out.table.rows[i];
    row = {p};
    for (std::size_t l : levels) {
      try {
        const SymmetryQseResult r = symmetry_qse(rho, gens, h, l, &ground);
        const double inf = 1.0 - *r.fidelity;
        const double ratio = (bare == 0.0 && inf == 0.0) ? kNaN : bare / inf;
        row.insert(row.end(), {*r.fidelity, inf, r.energy, ratio});
        if (!cfg.dump_matrices_path.empty() && l == levels.back()) {
          dumps[i] = "# p=" + format_number(p) + " level=" + std::to_string(l) + "\nH\n" +
                     dump_matrix(r.solution.h_matrix) + "S\n" +
                     dump_matrix(r.solution.s_matrix);
        }
      } catch (const EmptySubspaceError& e) {
        warnings[i].push_back("p=" + format_number(p) + " level " + std::to_string(l) +
                              ": " + e.what());
        row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN});
      }
    }
  });

  for (auto& w : warnings) out.warnings.insert(out.warnings.end(), w.begin(), w.end());
  out.peak_level = levels.back();
  const auto ratios = out.table.column_values("ratio_l" + std::to_string(out.peak_level));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (ratios[i] > out.peak_ratio) {
      out.peak_ratio = ratios[i];
      out.peak_ratio_p = grid[i];
    }
  }
  if (!cfg.dump_matrices_path.empty()) {
    write_file(cfg.dump_matrices_path,
               std::accumulate(dumps.begin(), dumps.end(), std::string()));
  }
  return out;
}

PauliSum parse_observable(const std::string& spec, const StabilizerCode& code) {
  if (spec == "logical-x") return PauliSum(code.logical_x().front());
  if (spec == "logical-z") return PauliSum(code.logical_z().front());
  if (spec == "logical-y") {
    const PauliString xz = multiply(code.logical_x().front(), code.logical_z().front());
    return PauliSum(xz.with_phase_exponent(xz.phase_exponent() + 1));
  }
  PauliSum obs = PauliSum::from_expression(spec);
  if (obs.n_qubits() != code.n()) {
    throw DimensionError("observable acts on " + std::to_string(obs.n_qubits()) +
                         " qubits, code on " + std::to_string(code.n()));
  }
  return obs;
}

EstimateResult run_estimate(const EstimateConfig& cfg) {
  if (!(cfg.noise >= 0.0 && cfg.noise <= 1.0)) throw ArgumentError("noise must lie in [0, 1]");
  const StabilizerCode code = load_code_or_default(cfg.code_path);
  const std::size_t l = cfg.level.value_or(code.m());
  if (l > code.m()) throw ArgumentError("level exceeds m = " + std::to_string(code.m()));
  const DensityMatrix rho = depolarize_all(
      DensityMatrix::from_pure(prepare_logical_state(code, cfg.theta, cfg.phi)), cfg.noise);
  const PauliSum obs = parse_observable(cfg.observable, code);
  const PauliSum id = PauliSum::identity(code.n());

  SamplingPlan num_plan, c_plan;
  EstimateResult out;
  switch (cfg.scheme) {
    case Scheme::uniform:
    case Scheme::importance: {
      if (cfg.scheme == Scheme::uniform) {
        num_plan = uniform_plan(rho, code, l, obs);
        c_plan = uniform_plan(rho, code, l, id);
      } else {
        num_plan = importance_plan(rho, code, l, obs, cfg.p_weight);
        c_plan = importance_plan(rho, code, l, id, cfg.p_weight);
      }
      const CorrectionResult exact = corrected_expectation(rho, obs, code, l);
      out.oracle_numerator = exact.numerator;
      out.oracle_c = exact.c;
      out.oracle_value = exact.value;
      break;
    }
    case Scheme::recovery: {
      SyndromeTable table;
      if (cfg.recovery_table == "default") {
        table = build_syndrome_table(code);
      } else if (cfg.recovery_table == "identity") {
        const PauliString eye(code.n());
        table = SyndromeTable(code.m(), {{Syndrome{0, code.m()}, eye, eye, std::nullopt}});
      } else {
        throw ArgumentError("recovery table must be 'default' or 'identity'");
      }
      const std::vector<double> b = table.default_sampling_weights();
      num_plan = recovery_plan(rho, code, obs, table, b);
      c_plan = recovery_plan(rho, code, id, table, b);
      const CorrectionResult exact = recovery_corrected_expectation(rho, obs, code, table);
      out.oracle_numerator = exact.numerator;
      out.oracle_c = exact.c;
      out.oracle_value = exact.value;
      break;
    }
  }

  out.ratio = estimate_corrected_value(num_plan, c_plan, cfg.shots, cfg.seed);
  const RatioEstimate& r = out.ratio;
  const double rel_num = r.numerator.standard_error / r.numerator.estimate;
  const double rel_c = r.normalization.standard_error / r.normalization.estimate;
  out.corrected_standard_error = std::abs(r.value) * std::sqrt(rel_num * rel_num + rel_c * rel_c);

  auto report_row = [](const std::string& quantity, const EstimatorReport& rep, double oracle) {
    return quantity + "," + to_csv_row(rep) + "," + format_number(rep.standard_error) + "," +
           format_number(rep.effective_sample_size.value_or(kNaN)) + "," + format_number(oracle);
  };
  out.csv = "quantity," + report_csv_header() + ",standard_error,effective_sample_size,oracle\n";
  out.csv += report_row("numerator", r.numerator, out.oracle_numerator) + "\n";
  out.csv += report_row("normalization", r.normalization, out.oracle_c) + "\n";
  out.csv += "corrected," + to_string(cfg.scheme) + "," + std::to_string(cfg.seed) + "," +
             std::to_string(cfg.shots) + "," + format_number(r.value) + ",,,," +
             format_number(out.corrected_standard_error) + ",," +
             format_number(out.oracle_value) + "\n";
  return out;
}

}  // namespace qsed
