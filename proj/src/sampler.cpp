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

#include "qsed/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qsed/text.hpp"

namespace qsed {

PauliSum SamplingDecomposition::reconstruct() const {
  if (terms.empty()) throw ArgumentError("empty decomposition");
  PauliSum out(terms.front().op.n_qubits());
  for (const auto& t : terms) out.add(gamma_tilde * t.gamma, t.op);
  return out;
}

SamplingDecomposition decompose_for_sampling(const PauliSum& obs) {
  if (!obs.is_hermitian()) throw ContractError("observable is not Hermitian");
  const PauliSum c = obs.canonical();
  SamplingDecomposition d;
  for (const auto& t : c.terms()) {
    const double v = (t.coefficient * t.op.phase()).real();
    if (v == 0.0) continue;
    const PauliString op = t.op.with_phase_exponent(v < 0.0 ? 2 : 0);
    d.terms.push_back({std::abs(v), op});
    d.gamma_tilde += std::abs(v);
  }
  if (d.terms.empty() || !(d.gamma_tilde > 0.0)) {
    throw ArgumentError("cannot sample the zero operator");
  }
  for (auto& t : d.terms) t.gamma /= d.gamma_tilde;
  return d;
}

ShotRng::ShotRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

int sample_pauli_outcome(const DensityMatrix& rho, const PauliString& p, ShotRng& rng) {
  if (!p.is_hermitian()) throw ContractError("measured Pauli " + p.str() + " is not Hermitian");
  const double t = pauli_trace(rho.matrix(), p).real();
  return rng.uniform() < 0.5 * (1.0 + t) ? 1 : -1;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::uniform: return "uniform";
    case Scheme::importance: return "importance";
    case Scheme::recovery: return "recovery";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "uniform") return Scheme::uniform;
  if (s == "importance") return Scheme::importance;
  if (s == "recovery") return Scheme::recovery;
  throw ArgumentError("unknown scheme '" + std::string(s) +
                      "' (expected uniform, importance or recovery)");
}

namespace {

std::string num(double v) { return format_number(v); }
std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

}  // namespace

std::string report_csv_header() {
  return "scheme,seed,n_samples,estimate,empirical_variance,predicted_variance,p_plus";
}

std::string to_csv_row(const EstimatorReport& r) {
  return to_string(r.scheme) + "," + std::to_string(r.seed) + "," +
         std::to_string(r.sample_count) + "," + num(r.estimate) + "," +
         num(r.empirical_variance) + "," + opt_num(r.predicted_variance) + "," +
         opt_num(r.p_plus);
}

double SamplingPlan::exact_mean() const {
  double m = 0.0;
  for (const auto& e : entries) m += e.probability * e.weight * e.expectation;
  return m;
}

double SamplingPlan::exact_p_plus() const {
  double p = 0.0;
  for (const auto& e : entries) p += e.probability * 0.5 * (1.0 + e.expectation);
  return p;
}

double SamplingPlan::exact_binomial_variance() const {
  double second = 0.0;
  for (const auto& e : entries) second += e.probability * e.weight * e.weight;
  const double mean = exact_mean();
  return std::max(0.0, 0.25 * (second - mean * mean));
}

EstimatorReport SamplingPlan::run(std::size_t n_samples, std::uint64_t seed,
                                  std::uint64_t stream) const {
  if (n_samples == 0) throw ArgumentError("n_samples must be positive");
  if (entries.empty()) throw ArgumentError("empty sampling plan");
  std::vector<double> cumulative;
  cumulative.reserve(entries.size());
  double total = 0.0;
  for (const auto& e : entries) {
    total += e.probability;
    cumulative.push_back(total);
  }

  ShotRng rng(seed, stream);
  double sum = 0.0, sum_sq = 0.0, lr_sum = 0.0, lr_sq = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    const Entry& e = entries[static_cast<std::size_t>(it - cumulative.begin())];
    const int x = rng.uniform() < 0.5 * (1.0 + e.expectation) ? 1 : -1;
    const double v = e.weight * x;
    sum += v;
    sum_sq += v * v;
    const double lr = e.weight / gamma_tilde;
    lr_sum += lr;
    lr_sq += lr * lr;
  }
  const double n = static_cast<double>(n_samples);
  EstimatorReport r;
  r.scheme = scheme;
  r.seed = seed;
  r.sample_count = n_samples;
  r.estimate = sum / n;
  const double var = std::max(0.0, sum_sq / n - r.estimate * r.estimate);
  r.empirical_variance = 0.25 * var;
  r.standard_error = std::sqrt(var / n);
  r.predicted_variance = exact_binomial_variance();
  r.p_plus = exact_p_plus();
  r.effective_sample_size = lr_sq > 0.0 ? lr_sum * lr_sum / lr_sq : 0.0;
  return r;
}

namespace {

void check_inputs(const DensityMatrix& rho, const StabilizerCode& code,
                  const PauliSum& obs) {
  if (rho.n_qubits() != code.n() || obs.n_qubits() != code.n()) {
    throw DimensionError("state, observable and code must act on the same register");
  }
}

void check_commutes(const SamplingDecomposition& d, std::span<const PauliString> ops) {
  for (const auto& t : d.terms) {
    for (const auto& g : ops) {
      if (!commutes(t.op, g)) {
        throw ContractError("observable term " + t.op.str() + " anticommutes with " +
                            g.str());
      }
    }
  }
}

/// Memoized Tr[rho P] for Hermitian P.
class ExpectationCache {
 public:
  explicit ExpectationCache(const Matrix& rho) : rho_(rho) {}
  double operator()(const PauliString& p) {
    const auto key = std::make_pair(p.x_mask(), p.z_mask());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, pauli_trace(rho_, p.with_phase_exponent(0)).real()).first;
    }
    return p.phase_exponent() % 4 == 2 ? -it->second : it->second;
  }

 private:
  const Matrix& rho_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> cache_;
};

/// q_chi is the normalized proposal over group elements.
SamplingPlan group_plan(const DensityMatrix& rho, const StabilizerCode& code,
                        std::size_t l, const PauliSum& obs, Scheme scheme,
                        const std::vector<double>& q_chi) {
  const auto group = hierarchy_group(code, l);
  const SamplingDecomposition d = decompose_for_sampling(obs);
  check_commutes(d, group);
  const double inv_size = 1.0 / static_cast<double>(group.size());
  ExpectationCache ev(rho.matrix());
  SamplingPlan plan;
  plan.scheme = scheme;
  plan.gamma_tilde = d.gamma_tilde;
  for (std::size_t chi = 0; chi < group.size(); ++chi) {
    const double likelihood = inv_size / q_chi[chi];
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      SamplingPlan::Entry e;
      e.chi = chi;
      e.term = j;
      e.probability = q_chi[chi] * d.terms[j].gamma;
      if (e.probability == 0.0) continue;
      e.weight = d.gamma_tilde * likelihood;
      e.measured = multiply(group[chi], d.terms[j].op);
      e.expectation = ev(e.measured);
      plan.entries.push_back(std::move(e));
    }
  }
  return plan;
}

}  // namespace

SamplingPlan uniform_plan(const DensityMatrix& rho, const StabilizerCode& code,
                          std::size_t l, const PauliSum& obs) {
  check_inputs(rho, code, obs);
  if (l > code.m()) throw ArgumentError("level exceeds m");
  const std::size_t size = std::size_t{1} << l;
  return group_plan(rho, code, l, obs, Scheme::uniform,
                    std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

SamplingPlan importance_plan(const DensityMatrix& rho, const StabilizerCode& code,
                             std::size_t l, const PauliSum& obs, double p_weight) {
  check_inputs(rho, code, obs);
  if (l > code.m()) throw ArgumentError("level exceeds m");
  if (!(p_weight >= 0.0 && p_weight < 1.0)) {
    throw ArgumentError("importance weight p must lie in [0, 1)");
  }
  const auto group = hierarchy_group(code, l);
  std::vector<double> q(group.size());
  double z = 0.0;
  for (std::size_t chi = 0; chi < group.size(); ++chi) {
    q[chi] = std::pow(1.0 - p_weight, static_cast<double>(weight(group[chi])));
    z += q[chi];
  }
  for (auto& v : q) v /= z;
  return group_plan(rho, code, l, obs, Scheme::importance, q);
}

SamplingPlan recovery_plan(const DensityMatrix& rho, const StabilizerCode& code,
                           const PauliSum& obs, const SyndromeTable& table,
                           const std::vector<double>& b) {
  check_inputs(rho, code, obs);
  if (table.m() != code.m()) throw ArgumentError("syndrome table does not belong to this code");
  if (b.size() != table.size()) {
    throw ArgumentError("recovery weights: expected " + std::to_string(table.size()) +
                        " entries, got " + std::to_string(b.size()));
  }
  double b_sum = 0.0;
  for (double v : b) {
    if (!(v >= 0.0)) throw ArgumentError("recovery weights must be non-negative");
    b_sum += v;
  }
  if (std::abs(b_sum - 1.0) > 1e-9) throw ArgumentError("recovery weights must sum to 1");

  const auto group = hierarchy_group(code, code.m());
  const SamplingDecomposition d = decompose_for_sampling(obs);
  check_commutes(d, group);
  const double inv_size = 1.0 / static_cast<double>(group.size());
  ExpectationCache ev(rho.matrix());
  SamplingPlan plan;
  plan.scheme = Scheme::recovery;
  plan.gamma_tilde = d.gamma_tilde;
  for (std::size_t alpha = 0; alpha < table.size(); ++alpha) {
    if (b[alpha] == 0.0) continue;
    const auto& entry = table.entries()[alpha];
    std::vector<PauliString> moved;
    moved.reserve(d.terms.size());
    for (const auto& t : d.terms) {
      moved.push_back(multiply(multiply(entry.recovery.adjoint(), t.op), entry.recovery));
    }
    for (std::size_t chi = 0; chi < group.size(); ++chi) {
      // Sign of S_chi inside the error projector for this syndrome.
      bool flip = false;
      for (std::size_t i = 0; i < code.m(); ++i) {
        if (((chi >> i) & 1u) && entry.syndrome[i]) flip = !flip;
      }
      const PauliString s = flip ? group[chi].negated() : group[chi];
      for (std::size_t j = 0; j < d.terms.size(); ++j) {
        SamplingPlan::Entry e;
        e.chi = chi;
        e.term = j;
        e.alpha = alpha;
        e.probability = inv_size * d.terms[j].gamma * b[alpha];
        if (e.probability == 0.0) continue;
        e.weight = d.gamma_tilde / b[alpha];
        e.measured = multiply(s, moved[j]);
        e.expectation = ev(e.measured);
        plan.entries.push_back(std::move(e));
      }
    }
  }
  return plan;
}

EstimatorReport uniform_estimator(const DensityMatrix& rho, const StabilizerCode& code,
                                  std::size_t l, const PauliSum& obs,
                                  std::size_t n_samples, std::uint64_t seed) {
  return uniform_plan(rho, code, l, obs).run(n_samples, seed);
}

EstimatorReport importance_estimator(const DensityMatrix& rho,
                                     const StabilizerCode& code, std::size_t l,
                                     const PauliSum& obs, std::size_t n_samples,
                                     std::uint64_t seed, double p_weight) {
  return importance_plan(rho, code, l, obs, p_weight).run(n_samples, seed);
}

EstimatorReport recovery_estimator(const DensityMatrix& rho, const StabilizerCode& code,
                                   const PauliSum& obs, const SyndromeTable& table,
                                   const std::vector<double>& b, std::size_t n_samples,
                                   std::uint64_t seed) {
  return recovery_plan(rho, code, obs, table, b).run(n_samples, seed);
}

RatioEstimate estimate_corrected_value(const SamplingPlan& numerator_plan,
                                       const SamplingPlan& normalization_plan,
                                       std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw ArgumentError("need at least two shots for a ratio estimate");
  const std::size_t n_num = n_samples / 2;
  RatioEstimate out;
  out.numerator = numerator_plan.run(n_num, seed, 0);
  out.normalization = normalization_plan.run(n_samples - n_num, seed, 1);
  if (out.normalization.estimate <= 0.0) {
    throw NoSupportError("estimated normalization is not positive");
  }
  out.value = out.numerator.estimate / out.normalization.estimate;
  return out;
}

}  // namespace qsed
