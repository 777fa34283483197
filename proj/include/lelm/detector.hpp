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

// Necessary distinguishability criteria for a single detector mode, and
// decomposition of detection signatures in the Bell basis.

#pragma once

#include <vector>

#include "lelm/bell_set.hpp"
#include "lelm/fock.hpp"

namespace lelm {

/// <Psi_k| c^dagger c |Psi_l>: overlap of the two states left after one click in `mode`.
inline Complex gram_condition(const BellLabel& k, const BellLabel& l, const DetectorMode& mode,
                              Statistics statistics) {
  if (k.d != l.d || k.d != mode.d()) throw std::domain_error("gram_condition: dimension mismatch");
  const CVector rk = annihilate(mode, bell_state(k, statistics));
  const CVector rl = annihilate(mode, bell_state(l, statistics));
  return rk.dot(rl);  // Eigen's dot conjugates the left operand
}

/// The d^2 Bell states in canonical ordinal order.
inline std::vector<TwoParticleState> bell_basis(int d, Statistics statistics) {
  std::vector<TwoParticleState> basis;
  basis.reserve(d * d);
  for (int i = 0; i < d * d; ++i) basis.push_back(bell_state(BellLabel::from_ordinal(i, d), statistics));
  return basis;
}

/// Coefficients beta with sig = sum beta_{c,p} |Psi_c^p>, indexed by label ordinal.
inline CVector bell_decompose(const TwoParticleState& sig) {
  if (!sig.in_lr_sector()) throw std::domain_error("bell_decompose: state outside the one-L/one-R sector");
  const int d = sig.d();
  CVector beta(d * d);
  for (int i = 0; i < d * d; ++i) {
    beta[i] = inner_product(bell_state(BellLabel::from_ordinal(i, d), sig.statistics()), sig);
  }
  return beta;
}

inline TwoParticleState bell_recompose(const CVector& beta, int d, Statistics statistics) {
  if (beta.size() != d * d) throw std::domain_error("bell_recompose: need d^2 coefficients");
  CMatrix amp = CMatrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < d * d; ++i) {
    amp += beta[i] * bell_state(BellLabel::from_ordinal(i, d), statistics).amplitudes();
  }
  return {d, statistics, std::move(amp)};
}

struct ClassCensus {
  int joint_ket_count = 0;
  std::vector<Complex> bell_coefficients;  // indexed by phase class p

  int nonzero_bell_count(double tol = kBellTolerance) const {
    int n = 0;
    for (const auto& b : bell_coefficients) n += std::abs(b) > tol ? 1 : 0;
    return n;
  }
};

/// Joint-ket and Bell-coefficient content of a signature, split by correlation class.
struct SignatureCensus {
  int d = 0;
  std::vector<ClassCensus> classes;
  int total_nonzero_bell = 0;

  std::vector<int> joint_ket_counts() const {
    std::vector<int> out;
    for (const auto& c : classes) out.push_back(c.joint_ket_count);
    return out;
  }
};

inline SignatureCensus correlation_census(const TwoParticleState& sig, double tol = kBellTolerance) {
  const int d = sig.d();
  const CMatrix joint = sig.joint_kets();
  const CVector beta = bell_decompose(sig);
  SignatureCensus census;
  census.d = d;
  census.classes.resize(d);
  for (int c = 0; c < d; ++c) {
    auto& cls = census.classes[c];
    for (int j = 0; j < d; ++j) cls.joint_ket_count += std::abs(joint(j, mod(j + c, d))) > kKetZero ? 1 : 0;
    for (int p = 0; p < d; ++p) cls.bell_coefficients.push_back(beta[c * d + p]);
    census.total_nonzero_bell += cls.nonzero_bell_count(tol);
  }
  return census;
}

/// True iff at least two members of `target` appear in the signature.
inline bool signature_conflicts(const TwoParticleState& sig, const BellSet& target, double tol = kBellTolerance) {
  if (sig.is_null()) return false;
  if (target.d() != sig.d()) throw std::domain_error("signature_conflicts: dimension mismatch");
  const CVector beta = bell_decompose(sig);
  int present = 0;
  for (const auto& l : target) present += std::abs(beta[l.ordinal()]) > tol ? 1 : 0;
  return present >= 2;
}

}  // namespace lelm
