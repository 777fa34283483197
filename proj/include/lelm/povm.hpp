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

// Generalized (POVM) LELM measurements: Kraus updates, the first-click
// residual states left for particle 2, and the exact infeasibility chains for
// all four qubit Bell states and for a fatal five-element qutrit subset.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lelm/bell_set.hpp"
#include "lelm/feasibility.hpp"
#include "lelm/fock.hpp"
#include "lelm/proof.hpp"
#include "lelm/symmetry.hpp"

namespace lelm {

/// E[i][j] = alpha[j] * n[i]: every input basis state is sent to a multiple of n.
struct Rank1Kraus {
  int d = 0;
  CVector alpha;
  CVector n;

  Rank1Kraus(int d_, CVector alpha_, CVector n_) : d(d_), alpha(std::move(alpha_)), n(std::move(n_)) {
    require_dimension(d);
    if (alpha.size() != 2 * d || n.size() != 2 * d) throw std::domain_error("Rank1Kraus: vectors must have length 2d");
  }

  CMatrix matrix() const { return n * alpha.transpose(); }
};

/// sigma_2 / sigma_1 of a matrix (0 for rank <= 1 up to round-off).
inline double second_singular_ratio(const CMatrix& m) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  if (s.size() < 2 || s[0] == 0.0) return 0.0;
  return s[1] / s[0];
}

struct PovmElement {
  CMatrix kraus;

  CMatrix element() const { return kraus.adjoint() * kraus; }

  bool is_positive(double tol = 1e-12) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(element());
    return es.eigenvalues().minCoeff() >= -tol;
  }
};

/// sum_i E_i^dagger E_i == I within tol.
inline bool is_complete(const std::vector<PovmElement>& povm, double tol = 1e-10) {
  if (povm.empty()) return false;
  const auto n = povm.front().kraus.cols();
  CMatrix total = CMatrix::Zero(n, n);
  for (const auto& e : povm) total += e.element();
  return (total - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

struct KrausOutcome {
  bool null = false;
  CVector state;       // normalized post-measurement state (empty when null)
  double probability = 0.0;
};

/// psi -> E psi / |E psi| with probability <psi|E^dagger E|psi>.
inline KrausOutcome povm_transform_probability(const PovmElement& e, const CVector& psi) {
  if (e.kraus.cols() != psi.size()) throw std::domain_error("povm_transform_probability: dimension mismatch");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) throw std::domain_error("povm_transform_probability: psi must be unit-norm");
  const CVector out = e.kraus * psi;
  const double p = out.squaredNorm();
  if (p <= 1e-24) return {true, {}, 0.0};
  return {false, out / std::sqrt(p), p};
}

struct FirstClickResult {
  bool null = false;
  bool separable = false;
  double schmidt_ratio = 0.0;
  CVector particle2;  // unnormalized, meaningful up to scale when separable
};

/// Applies E to particle 1 of the (anti)symmetrized Bell state and reports
/// whether the result factorizes; when it does, particle2 is the factor left
/// for the second particle.
inline FirstClickResult apply_first_click(const CMatrix& kraus, const BellLabel& label, Statistics statistics) {
  const int dim = 2 * label.d;
  if (kraus.rows() != dim || kraus.cols() != dim) throw std::domain_error("apply_first_click: Kraus operator must be 2d x 2d");
  const CMatrix grid = kraus * bell_state(label, statistics).amplitudes();
  FirstClickResult r;
  if (grid.cwiseAbs().maxCoeff() <= 1e-14) {
    r.null = true;
    return r;
  }
  Eigen::JacobiSVD<CMatrix> svd(grid, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  r.schmidt_ratio = s.size() > 1 ? s[1] / s[0] : 0.0;
  r.separable = r.schmidt_ratio < kSchmidtTolerance;
  // grid ~ s0 * u0 * v0^dagger, so particle 2 carries conj(v0).
  r.particle2 = s[0] * svd.matrixV().col(0).conjugate();
  return r;
}

/// Residual particle-2 vector for a rank-1 Kraus operator: sum_m alpha_m A[m][n].
/// The n-vector only contributes an overall factor and is dropped.
inline CVector first_click_residual(const CVector& alpha, const BellLabel& label, Statistics statistics) {
  if (alpha.size() != 2 * label.d) throw std::domain_error("first_click_residual: alpha must have length 2d");
  return bell_state(label, statistics).amplitudes().transpose() * alpha;
}

inline FirstClickResult apply_first_click(const Rank1Kraus& k, const BellLabel& label, Statistics statistics) {
  if (k.d != label.d) throw std::domain_error("apply_first_click: dimension mismatch");
  FirstClickResult r = apply_first_click(k.matrix(), label, statistics);
  if (!r.null) r.particle2 = first_click_residual(k.alpha, label, statistics);
  return r;
}

/// Gram matrix of the residual particle-2 vectors across the set.
inline CMatrix residual_gram(const BellSet& set, const CVector& alpha, Statistics statistics) {
  std::vector<CVector> residuals;
  for (const auto& l : set) residuals.push_back(first_click_residual(alpha, l, statistics));
  const auto n = static_cast<Eigen::Index>(residuals.size());
  CMatrix g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) g(a, b) = residuals[a].dot(residuals[b]);
  return g;
}

/// Off-diagonal Gram entries as Hermitian forms in alpha: conj(A_k) A_l^T.
inline QuadraticSystem residual_conditions(const BellSet& set, Statistics statistics) {
  QuadraticSystem sys;
  sys.dim = 2 * set.d();
  std::vector<CMatrix> amps;
  for (const auto& l : set) amps.push_back(bell_state(l, statistics).amplitudes());
  for (std::size_t a = 0; a < amps.size(); ++a)
    for (std::size_t b = a + 1; b < amps.size(); ++b) sys.forms.push_back(amps[a].conjugate() * amps[b].transpose());
  return sys;
}

inline Polynomial residual_gram_polynomial(const BellLabel& k, const BellLabel& l, Statistics statistics) {
  const CMatrix ak = bell_state(k, statistics).amplitudes();
  const CMatrix al = bell_state(l, statistics).amplitudes();
  return Polynomial::hermitian_form(ak.conjugate() * al.transpose());
}

/// Kraus-column coefficient names alpha1..alpha{2d}, in basis order
/// |0,L>, |0,R>, |1,L>, ...
inline std::vector<std::string> alpha_names(int d) {
  std::vector<std::string> names;
  for (int i = 1; i <= 2 * d; ++i) names.push_back("alpha" + std::to_string(i));
  return names;
}

struct PovmCertificate {
  std::string name;
  Statistics statistics = Statistics::boson;
  BellSet set;
  SearchStatus status = SearchStatus::no_instance_found;
  std::vector<std::string> variables;
  std::vector<ProofStep> steps;
  /// min over unit alpha of sqrt(sum_{k != l} |G_kl|^2), from the optimizer.
  double numeric_min_offdiagonal_norm = 0.0;
  int numeric_restarts = 0;
};

namespace detail {

inline Polynomial modulus_difference(int n, int a, int b) {
  return Polynomial::modulus_squared(n, a) - Polynomial::modulus_squared(n, b);
}

/// z_a * conj(z_b)
inline Polynomial cross(int n, int a, int b) { return Polynomial::variable(n, a) * Polynomial::variable(n, b, true); }

inline double numeric_offdiagonal_minimum(const BellSet& set, Statistics statistics, int restarts, std::uint64_t seed) {
  const QuadraticSystem sys = residual_conditions(set, statistics);
  const auto outcome = minimize_with_restarts(sys, restarts, 500, 1e-300, seed);
  return std::sqrt(2.0 * outcome.best.residual);
}

inline std::string pair_name(const BellLabel& a, const BellLabel& b) { return "<" + a.str() + "|" + b.str() + ">"; }

}  // namespace detail

/// No POVM LELM apparatus leaves the four qubit Bell states orthogonal after a
/// first click: the six orthogonality conditions force alpha = 0.
inline PovmCertificate qubit_povm_nogo(Statistics statistics, int restarts = 200, std::uint64_t seed = 42) {
  constexpr int d = 2;
  const int n = 2 * d;
  PovmCertificate cert;
  cert.name = "povm-qubit";
  cert.statistics = statistics;
  cert.set = enumerate_sets(4, d).front();
  cert.variables = alpha_names(d);

  ProofChain chain(cert.variables);
  std::vector<std::string> hyps;
  const auto& labels = cert.set.labels();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      hyps.push_back(detail::pair_name(labels[a], labels[b]));
      chain.assume(hyps.back(), residual_gram_polynomial(labels[a], labels[b], statistics));
    }
  // 0-based: z0 = alpha1 |0,L>, z1 = alpha2 |0,R>, z2 = alpha3 |1,L>, z3 = alpha4 |1,R>.
  bool ok = chain.derive_linear("conj(alpha2)*alpha4 = 0", detail::cross(n, 3, 1), hyps);
  ok &= chain.derive_linear("conj(alpha1)*alpha3 = 0", detail::cross(n, 2, 0), hyps);
  ok &= chain.derive_linear("|alpha2| = |alpha4|", detail::modulus_difference(n, 1, 3), hyps);
  ok &= chain.derive_linear("|alpha1| = |alpha3|", detail::modulus_difference(n, 0, 2), hyps);
  ok &= chain.conclude_all_zero("alpha = 0");
  cert.steps = chain.steps();
  cert.status = ok && chain.all_verified() ? SearchStatus::exact_infeasible : SearchStatus::no_instance_found;
  cert.numeric_restarts = restarts;
  cert.numeric_min_offdiagonal_norm = detail::numeric_offdiagonal_minimum(cert.set, statistics, restarts, seed);
  return cert;
}

/// The qutrit subset {Psi_0^0, Psi_0^1, Psi_0^2, Psi_1^0, Psi_1^1}.
inline BellSet fatal_qutrit_subset() { return BellSet::of(3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}}); }

/// Two phase-orthogonality conditions give equal moduli on the odd and on the
/// even alpha's; three cross-class conditions give alpha_2 alpha_4^* =
/// -alpha_1 alpha_5^* and its cyclic partners; their product forces alpha = 0.
inline PovmCertificate qutrit_subset_nogo(Statistics statistics, int restarts = 200, std::uint64_t seed = 42) {
  constexpr int d = 3;
  const int n = 2 * d;
  PovmCertificate cert;
  cert.name = "povm-qutrit-subset";
  cert.statistics = statistics;
  cert.set = fatal_qutrit_subset();
  cert.variables = alpha_names(d);

  const BellLabel p00(d, 0, 0), p01(d, 0, 1), p02(d, 0, 2), p10(d, 1, 0), p11(d, 1, 1);
  ProofChain chain(cert.variables);
  auto assume = [&](const BellLabel& a, const BellLabel& b) {
    const auto name = detail::pair_name(a, b);
    chain.assume(name, residual_gram_polynomial(a, b, statistics));
    return name;
  };
  const std::vector<std::string> phase{assume(p00, p01), assume(p10, p11)};
  const std::vector<std::string> crossing{assume(p00, p10), assume(p01, p10), assume(p02, p10)};

  bool ok = chain.derive_linear("|alpha1| = |alpha3|", detail::modulus_difference(n, 0, 2), phase);
  ok &= chain.derive_linear("|alpha3| = |alpha5|", detail::modulus_difference(n, 2, 4), phase);
  ok &= chain.derive_linear("|alpha2| = |alpha4|", detail::modulus_difference(n, 1, 3), phase);
  ok &= chain.derive_linear("|alpha4| = |alpha6|", detail::modulus_difference(n, 3, 5), phase);
  ok &= chain.derive_linear("alpha2*conj(alpha4) = -alpha1*conj(alpha5)",
                            detail::cross(n, 1, 3) + detail::cross(n, 0, 4), crossing);
  ok &= chain.derive_linear("alpha4*conj(alpha6) = -alpha3*conj(alpha1)",
                            detail::cross(n, 3, 5) + detail::cross(n, 2, 0), crossing);
  ok &= chain.derive_linear("alpha6*conj(alpha2) = -alpha5*conj(alpha3)",
                            detail::cross(n, 5, 1) + detail::cross(n, 4, 2), crossing);
  ok &= chain.derive_product("|alpha2 alpha4 alpha6|^2 = -|alpha1 alpha3 alpha5|^2",
                             {"alpha2*conj(alpha4) = -alpha1*conj(alpha5)", "alpha4*conj(alpha6) = -alpha3*conj(alpha1)",
                              "alpha6*conj(alpha2) = -alpha5*conj(alpha3)"});
  ok &= chain.conclude_all_zero("alpha = 0");
  cert.steps = chain.steps();
  cert.status = ok && chain.all_verified() ? SearchStatus::exact_infeasible : SearchStatus::no_instance_found;
  cert.numeric_restarts = restarts;
  cert.numeric_min_offdiagonal_norm = detail::numeric_offdiagonal_minimum(cert.set, statistics, restarts, seed);
  return cert;
}

struct CoverageRow {
  BellSet set;
  TicTacToeClass cls = TicTacToeClass::anti_loser;
  std::optional<IndexTransform> witness;  // g with g(set) containing the fatal subset
};

struct CoverageReport {
  BellSet fatal_subset;
  std::vector<CoverageRow> rows;

  bool all_covered() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CoverageRow& r) { return r.witness.has_value(); });
  }
};

/// For every qutrit 6-set, a group element mapping it onto a superset of the
/// fatal subset.
inline CoverageReport six_set_coverage() {
  CoverageReport report;
  report.fatal_subset = fatal_qutrit_subset();
  const std::uint64_t fatal = report.fatal_subset.mask();
  for (const auto& s : enumerate_sets(6, 3)) {
    CoverageRow row{s, classify_tictactoe(s), std::nullopt};
    for (const auto& g : transform_group()) {
      if ((g.label_action.apply(s.mask()) & fatal) == fatal) {
        row.witness = g;
        break;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// No LELM measurement, projective or not, distinguishes more than 2d Bell states.
inline int distinguishability_upper_bound(int d) {
  require_dimension(d);
  return 2 * d;
}

struct OrthogonalityCheck {
  int nonzero_vectors = 0;
  int dimension = 0;
  double max_offdiagonal = 0.0;
  bool mutually_orthogonal = false;
};

/// Whether a list of residual vectors is pairwise orthogonal. More than
/// `dimension` nonzero vectors can never be.
inline OrthogonalityCheck check_mutual_orthogonality(const std::vector<CVector>& vectors, double tol = 1e-9) {
  OrthogonalityCheck out;
  if (vectors.empty()) {
    out.mutually_orthogonal = true;
    return out;
  }
  out.dimension = static_cast<int>(vectors.front().size());
  for (const auto& v : vectors) out.nonzero_vectors += v.norm() > tol ? 1 : 0;
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = a + 1; b < vectors.size(); ++b)
      out.max_offdiagonal = std::max(out.max_offdiagonal, std::abs(vectors[a].dot(vectors[b])));
  out.mutually_orthogonal = out.max_offdiagonal <= tol;
  return out;
}

}  // namespace lelm
