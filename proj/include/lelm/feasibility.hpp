// Copyright 2026 The lelm-bell Authors
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

// Numerical search for a unit detector mode satisfying every pairwise
// orthogonality condition of a Bell-state set.
//
// Each condition is a Hermitian form G_kl(nu) = nu^dagger Q_kl nu. The search
// minimizes sum_{k<l} |G_kl|^2 over the unit sphere in C^n with a
// Levenberg-Marquardt iteration on the stacked real and imaginary parts, plus
// one row for the norm constraint, projecting back to the sphere after every
// accepted step. Results are evidence only; this module never claims exact
// infeasibility.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lelm/bell_set.hpp"
#include "lelm/detector.hpp"
#include "lelm/fock.hpp"

namespace lelm {

struct SearchConfig {
  int restarts = 200;
  int max_iterations = 500;
  /// Squared-residual scale; at or below this an instance counts as found.
  double accept_tolerance = 1e-16;
  std::uint64_t seed = 42;
  Statistics statistics = Statistics::boson;
  /// Keep the best-so-far residual after each restart in the report.
  bool record_trace = false;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("SearchConfig: max_iterations must be >= 1");
    if (!(accept_tolerance > 0)) throw std::invalid_argument("SearchConfig: accept_tolerance must be > 0");
  }
};

/// Best residual above this after all restarts is a clear no-instance verdict.
inline constexpr double kNoInstanceThreshold = 1e-6;

enum class SearchStatus { instance_found, no_instance_found, exact_infeasible };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::instance_found: return "instance-found";
    case SearchStatus::no_instance_found: return "no-instance-found";
    case SearchStatus::exact_infeasible: return "exact-infeasible";
  }
  return "?";
}

inline SearchStatus parse_search_status(std::string_view s) {
  if (s == "instance-found") return SearchStatus::instance_found;
  if (s == "no-instance-found") return SearchStatus::no_instance_found;
  if (s == "exact-infeasible") return SearchStatus::exact_infeasible;
  throw std::invalid_argument("unknown search status '" + std::string(s) + "'");
}

struct FeasibilityReport {
  BellSet set;
  SearchStatus status = SearchStatus::no_instance_found;
  double best_residual = 0.0;
  std::optional<DetectorMode> witness;
  int restarts_used = 0;
  std::vector<double> trace;  // best-so-far per restart, when requested
};

/// A family of Hermitian-form conditions nu^dagger Q nu = 0 over C^dim.
struct QuadraticSystem {
  int dim = 0;
  std::vector<CMatrix> forms;

  double residual(const CVector& nu) const {
    double total = 0.0;
    for (const auto& q : forms) total += std::norm(nu.dot(q * nu));
    return total;
  }

  /// Gradient of residual() with respect to (Re nu, Im nu), stacked.
  Eigen::VectorXd gradient(const CVector& nu) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * dim);
    for (const auto& q : forms) {
      const Complex value = nu.dot(q * nu);
      const CVector qn = q * nu;
      const CVector nq = q.transpose() * nu.conjugate();
      for (int j = 0; j < dim; ++j) {
        const Complex dx = qn[j] + nq[j];
        const Complex dy = Complex(0, -1) * qn[j] + Complex(0, 1) * nq[j];
        g[j] += 2.0 * (value.real() * dx.real() + value.imag() * dx.imag());
        g[dim + j] += 2.0 * (value.real() * dy.real() + value.imag() * dy.imag());
      }
    }
    return g;
  }
};

/// Conditions <Psi_k|c^dagger c|Psi_l> = 0 for every unordered pair k < l in the set.
inline QuadraticSystem detector_conditions(const BellSet& set, Statistics statistics) {
  QuadraticSystem sys;
  sys.dim = 2 * set.d();
  std::vector<CMatrix> amps;
  for (const auto& l : set) amps.push_back(bell_state(l, statistics).amplitudes());
  for (std::size_t a = 0; a < amps.size(); ++a)
    for (std::size_t b = a + 1; b < amps.size(); ++b)
      sys.forms.push_back(2.0 * amps[a].conjugate() * amps[b].transpose());
  return sys;
}

inline double residual(const BellSet& set, const DetectorMode& mode, Statistics statistics) {
  if (!mode.is_unit(1e-9)) throw std::domain_error("residual: detector mode must be unit-norm");
  double total = 0.0;
  const auto& labels = set.labels();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      total += std::norm(gram_condition(labels[a], labels[b], mode, statistics));
  return total;
}

struct MinimizeResult {
  double residual = 0.0;
  CVector point;
  int iterations = 0;
};

/// One damped least-squares descent from `start`, kept on the unit sphere.
inline MinimizeResult minimize_from(const QuadraticSystem& sys, CVector start, int max_iterations,
                                    double stop_below) {
  const int n = sys.dim;
  const int rows = 2 * static_cast<int>(sys.forms.size()) + 1;
  CVector nu = start / start.norm();
  double cost = sys.residual(nu);
  double lambda = 1e-3;
  Eigen::MatrixXd jac(rows, 2 * n);
  Eigen::VectorXd f(rows);
  int it = 0;
  int stalls = 0;
  for (; it < max_iterations && cost > stop_below; ++it) {
    int r = 0;
    for (const auto& q : sys.forms) {
      const CVector qn = q * nu;
      const CVector nq = q.transpose() * nu.conjugate();
      const Complex value = nu.dot(qn);
      f[r] = value.real();
      f[r + 1] = value.imag();
      for (int j = 0; j < n; ++j) {
        const Complex dx = qn[j] + nq[j];
        const Complex dy = Complex(0, -1) * qn[j] + Complex(0, 1) * nq[j];
        jac(r, j) = dx.real();
        jac(r + 1, j) = dx.imag();
        jac(r, n + j) = dy.real();
        jac(r + 1, n + j) = dy.imag();
      }
      r += 2;
    }
    f[r] = nu.squaredNorm() - 1.0;
    for (int j = 0; j < n; ++j) {
      jac(r, j) = 2.0 * nu[j].real();
      jac(r, n + j) = 2.0 * nu[j].imag();
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtf = jac.transpose() * f;
    bool accepted = false;
    while (!accepted && lambda < 1e16) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = damped.ldlt().solve(-jtf);
      CVector trial(n);
      for (int j = 0; j < n; ++j) trial[j] = nu[j] + Complex(step[j], step[n + j]);
      const double tn = trial.norm();
      if (tn == 0.0) {
        lambda *= 4.0;
        continue;
      }
      trial /= tn;
      const double trial_cost = sys.residual(trial);
      if (trial_cost < cost) {
        stalls = (cost - trial_cost) <= 1e-13 * cost ? stalls + 1 : 0;
        nu = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted || stalls >= 5) break;
  }
  return {cost, nu, it};
}

/// Best of `restarts` seeded descents from complex-Gaussian starting points.
struct RestartOutcome {
  MinimizeResult best;
  int restarts_used = 0;
  std::vector<double> trace;
};

inline RestartOutcome minimize_with_restarts(const QuadraticSystem& sys, int restarts, int max_iterations,
                                             double accept_tolerance, std::uint64_t stream_seed,
                                             bool record_trace = false) {
  std::mt19937_64 rng(stream_seed);
  RestartOutcome out;
  out.best.residual = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    const CVector start = random_unit_vector(sys.dim, rng);
    MinimizeResult res = minimize_from(sys, start, max_iterations, accept_tolerance * 1e-4);
    ++out.restarts_used;
    if (res.residual < out.best.residual) out.best = std::move(res);
    if (record_trace) out.trace.push_back(out.best.residual);
    if (out.best.residual <= accept_tolerance) break;
  }
  return out;
}

inline FeasibilityReport search_instance(const BellSet& set, const SearchConfig& cfg, std::uint64_t set_index = 0) {
  cfg.validate();
  const QuadraticSystem sys = detector_conditions(set, cfg.statistics);
  FeasibilityReport report;
  report.set = set;
  if (sys.forms.empty()) {
    // A single state imposes no condition; any unit mode works.
    report.status = SearchStatus::instance_found;
    report.best_residual = 0.0;
    report.witness = DetectorMode::basis(0, Channel::L, set.d());
    report.restarts_used = 0;
    return report;
  }
  const auto outcome = minimize_with_restarts(sys, cfg.restarts, cfg.max_iterations, cfg.accept_tolerance,
                                              mix_seed(cfg.seed, set_index), cfg.record_trace);
  report.best_residual = outcome.best.residual;
  report.restarts_used = outcome.restarts_used;
  report.trace = outcome.trace;
  if (outcome.best.residual <= cfg.accept_tolerance) {
    report.status = SearchStatus::instance_found;
    report.witness = DetectorMode(set.d(), outcome.best.point);
  } else {
    report.status = SearchStatus::no_instance_found;
  }
  return report;
}

/// One report per k-set, in canonical order. Set i uses stream seed
/// mix_seed(seed, i), so any subset of the batch can be rerun independently.
inline std::vector<FeasibilityReport> batch_classify(int k, int d, const SearchConfig& cfg) {
  cfg.validate();
  const auto sets = enumerate_sets(k, d);
  std::vector<FeasibilityReport> reports;
  reports.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) reports.push_back(search_instance(sets[i], cfg, i));
  return reports;
}

}  // namespace lelm
