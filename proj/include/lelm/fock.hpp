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

// Single-particle modes, symmetrized two-particle states, qudit Bell states
// and second-quantized mode annihilation.
//
// The single-particle basis is ordered |0,L>, |0,R>, |1,L>, |1,R>, ... so that
// index m = 2s is |s,L> and m = 2s + 1 is |s,R>. A two-particle state is kept
// as the full (2d)x(2d) first-quantized amplitude grid A[m][n] of
// |phi_m>_1 |phi_n>_2.

#pragma once

#include <compare>
#include <string>
#include <utility>

#include "lelm/core.hpp"

namespace lelm {

struct SingleParticleMode {
  int d = 0;
  int index = 0;
  int value = 0;
  Channel channel = Channel::L;
};

inline void require_dimension(int d) {
  if (d < 2) throw std::domain_error("qudit dimension must be at least 2");
}

inline SingleParticleMode mode_index(int value, Channel channel, int d) {
  require_dimension(d);
  if (value < 0 || value >= d) {
    throw std::domain_error("mode value " + std::to_string(value) + " outside [0, " +
                            std::to_string(d) + ")");
  }
  return {d, 2 * value + (channel == Channel::R ? 1 : 0), value, channel};
}

/// Inverse of mode_index.
inline SingleParticleMode mode_from_index(int m, int d) {
  require_dimension(d);
  if (m < 0 || m >= 2 * d) {
    throw std::domain_error("mode index " + std::to_string(m) + " outside [0, 2d)");
  }
  return {d, m, m / 2, (m % 2 == 0) ? Channel::L : Channel::R};
}

constexpr bool is_left(int m) { return m % 2 == 0; }

/// Bell label |Psi_c^p>: correlation class c, phase class p.
struct BellLabel {
  int d = 3;
  int c = 0;
  int p = 0;

  BellLabel() = default;
  BellLabel(int d_, int c_, int p_) : d(d_), c(c_), p(p_) {
    require_dimension(d);
    if (c < 0 || c >= d || p < 0 || p >= d) {
      throw std::domain_error("Bell label (c=" + std::to_string(c) + ", p=" + std::to_string(p) +
                              ") outside [0, d)");
    }
  }

  /// Position in canonical c-major order.
  int ordinal() const { return c * d + p; }
  static BellLabel from_ordinal(int ordinal, int d) { return {d, ordinal / d, ordinal % d}; }

  std::string str() const { return "Psi_" + std::to_string(c) + "^" + std::to_string(p); }

  friend auto operator<=>(const BellLabel&, const BellLabel&) = default;
};

/// Symmetrized (bosons) or antisymmetrized (fermions) two-particle state.
class TwoParticleState {
 public:
  TwoParticleState(int d, Statistics statistics)
      : d_(d), statistics_(statistics), amp_(CMatrix::Zero(2 * d, 2 * d)) {
    require_dimension(d);
  }

  /// Takes an amplitude grid that already has the required exchange symmetry.
  TwoParticleState(int d, Statistics statistics, CMatrix amp)
      : d_(d), statistics_(statistics), amp_(std::move(amp)) {
    require_dimension(d);
    if (amp_.rows() != 2 * d || amp_.cols() != 2 * d) {
      throw std::domain_error("amplitude grid must be (2d)x(2d)");
    }
    if (!has_exchange_symmetry(1e-12)) {
      throw std::domain_error("amplitude grid violates exchange symmetry for " +
                              std::string(to_string(statistics)) + "s");
    }
  }

  /// Symmetrizes an arbitrary grid as (T +- T^T) / sqrt(2).
  static TwoParticleState symmetrized(int d, Statistics statistics, const CMatrix& raw) {
    CMatrix amp = (raw + exchange_sign(statistics) * raw.transpose()) / std::sqrt(2.0);
    return {d, statistics, std::move(amp)};
  }

  /// Builds the one-L/one-R sector state sum_{a,b} J[a][b] |a,L>|b,R> (symmetrized).
  /// The grid J is normalized the same way as the resulting state.
  static TwoParticleState from_joint_kets(const CMatrix& joint, Statistics statistics) {
    const int d = static_cast<int>(joint.rows());
    if (joint.cols() != d) throw std::domain_error("joint-ket grid must be square");
    CMatrix amp = CMatrix::Zero(2 * d, 2 * d);
    const double sign = exchange_sign(statistics);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        amp(2 * a, 2 * b + 1) = joint(a, b) / std::sqrt(2.0);
        amp(2 * b + 1, 2 * a) = sign * joint(a, b) / std::sqrt(2.0);
      }
    }
    return {d, statistics, std::move(amp)};
  }

  int d() const { return d_; }
  int dim() const { return 2 * d_; }
  Statistics statistics() const { return statistics_; }
  const CMatrix& amplitudes() const { return amp_; }
  Complex operator()(int m, int n) const { return amp_(m, n); }

  double norm() const { return amp_.norm(); }
  bool is_null(double tol = kKetZero) const { return amp_.cwiseAbs().maxCoeff() <= tol; }
  bool is_normalized(double tol = 1e-12) const { return std::abs(amp_.squaredNorm() - 1.0) <= tol; }

  bool has_exchange_symmetry(double tol) const {
    const double sign = exchange_sign(statistics_);
    return (amp_ - sign * amp_.transpose()).cwiseAbs().maxCoeff() <= tol;
  }

  /// True when every amplitude with both particles in the same channel vanishes.
  bool in_lr_sector(double tol = kKetZero) const {
    for (int m = 0; m < dim(); ++m)
      for (int n = 0; n < dim(); ++n)
        if (is_left(m) == is_left(n) && std::abs(amp_(m, n)) > tol) return false;
    return true;
  }

  /// Joint-particle ket coefficients J[a][b] of |a,L>|b,R>, inverse of from_joint_kets.
  CMatrix joint_kets() const {
    CMatrix joint(d_, d_);
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b) joint(a, b) = std::sqrt(2.0) * amp_(2 * a, 2 * b + 1);
    return joint;
  }

  TwoParticleState normalized() const {
    const double n = norm();
    if (n == 0.0) return *this;
    return {d_, statistics_, amp_ / n};
  }

 private:
  int d_;
  Statistics statistics_;
  CMatrix amp_;
};

/// Single-particle mode picked out by a detector. `nu` holds the coefficients
/// of the annihilation operator c = sum_m nu_m a_m; the mode ket itself is
/// sum_m conj(nu_m) |phi_m>.
class DetectorMode {
 public:
  DetectorMode(int d, CVector nu) : d_(d), nu_(std::move(nu)) {
    require_dimension(d);
    if (nu_.size() != 2 * d) throw std::domain_error("detector mode must have 2d coefficients");
  }

  static DetectorMode from_ket(int d, const CVector& ket) { return {d, ket.conjugate()}; }

  static DetectorMode basis(int value, Channel channel, int d) {
    CVector nu = CVector::Zero(2 * d);
    nu[mode_index(value, channel, d).index] = 1.0;
    return {d, std::move(nu)};
  }

  int d() const { return d_; }
  const CVector& nu() const { return nu_; }
  CVector ket() const { return nu_.conjugate(); }
  double norm() const { return nu_.norm(); }
  bool is_unit(double tol = 1e-12) const { return std::abs(nu_.squaredNorm() - 1.0) <= tol; }

  bool has_ket(int m, double threshold = kKetZero) const { return std::abs(nu_[m]) > threshold; }

  int ket_count(double threshold = kKetZero) const {
    int count = 0;
    for (int m = 0; m < 2 * d_; ++m) count += has_ket(m, threshold) ? 1 : 0;
    return count;
  }

  /// Number of kets present in each channel.
  std::pair<int, int> channel_profile(double threshold = kKetZero) const {
    int left = 0, right = 0;
    for (int m = 0; m < 2 * d_; ++m) {
      if (!has_ket(m, threshold)) continue;
      (is_left(m) ? left : right) += 1;
    }
    return {left, right};
  }

  DetectorMode normalized() const {
    const double n = norm();
    if (n == 0.0) return *this;
    return {d_, nu_ / n};
  }

 private:
  int d_;
  CVector nu_;
};

inline TwoParticleState bell_state(const BellLabel& label, Statistics statistics) {
  const int d = label.d;
  CMatrix joint = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    joint(j, mod(j + label.c, d)) = root_of_unity(static_cast<long>(label.p) * j, d) / std::sqrt(double(d));
  }
  return TwoParticleState::from_joint_kets(joint, statistics);
}

inline Complex inner_product(const TwoParticleState& a, const TwoParticleState& b) {
  if (a.d() != b.d()) throw std::domain_error("inner_product: dimension mismatch");
  if (a.statistics() != b.statistics()) throw std::domain_error("inner_product: statistics mismatch");
  return (a.amplitudes().conjugate().cwiseProduct(b.amplitudes())).sum();
}

/// Remaining single-particle state c|Psi> under second-quantized ladder algebra:
/// (c|Psi>)_n = sqrt(2) sum_m nu_m A[m][n], identical for both statistics.
inline CVector annihilate(const DetectorMode& mode, const TwoParticleState& state) {
  if (mode.d() != state.d()) throw std::domain_error("annihilate: dimension mismatch");
  return std::sqrt(2.0) * (state.amplitudes().transpose() * mode.nu());
}

/// Detection signature |i>|j>: the tensor product of the two mode kets
/// projected onto the one-L/one-R sector, (anti)symmetrized and normalized.
/// A null projection yields the zero state (is_null() == true).
inline TwoParticleState detection_signature(const DetectorMode& i, const DetectorMode& j,
                                            Statistics statistics) {
  if (i.d() != j.d()) throw std::domain_error("detection_signature: dimension mismatch");
  const int d = i.d();
  const CVector ki = i.ket();
  const CVector kj = j.ket();
  CMatrix raw = ki * kj.transpose();
  for (int m = 0; m < 2 * d; ++m)
    for (int n = 0; n < 2 * d; ++n)
      if (is_left(m) == is_left(n)) raw(m, n) = 0.0;
  const TwoParticleState sig = TwoParticleState::symmetrized(d, statistics, raw);
  if (sig.norm() <= kKetZero * ki.norm() * kj.norm()) return {d, statistics};
  return sig.normalized();
}

}  // namespace lelm
