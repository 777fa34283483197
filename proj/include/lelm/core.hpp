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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lelm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/// Entries with magnitude at or below this are structural zeros ("ket absent").
inline constexpr double kKetZero = 1e-9;
/// Default threshold for a Bell coefficient to count as present in a signature.
inline constexpr double kBellTolerance = 1e-6;
/// Ratio sigma_2 / sigma_1 below which a bipartite grid is declared separable.
inline constexpr double kSchmidtTolerance = 1e-10;

enum class Statistics { boson, fermion };

/// +1 for bosons, -1 for fermions.
constexpr double exchange_sign(Statistics s) { return s == Statistics::boson ? 1.0 : -1.0; }

inline std::string_view to_string(Statistics s) {
  return s == Statistics::boson ? "boson" : "fermion";
}

inline Statistics parse_statistics(std::string_view text) {
  if (text == "boson") return Statistics::boson;
  if (text == "fermion") return Statistics::fermion;
  throw std::invalid_argument("unknown statistics '" + std::string(text) + "'");
}

enum class Channel { L, R };

/// e^{i 2 pi k / d}
inline Complex root_of_unity(long k, int d) {
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

constexpr int mod(long a, int d) {
  const long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// splitmix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Standard complex Gaussian draw (independent N(0, 1/2) real and imaginary parts).
template <class Rng>
Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Complex Gaussian with magnitude bounded away from zero; used where the
/// sampled coefficient must be structurally nonzero.
template <class Rng>
Complex nonzero_complex_gaussian(Rng& rng, double floor = 1e-3) {
  for (;;) {
    const Complex z = complex_gaussian(rng);
    if (std::abs(z) > floor) return z;
  }
}

template <class Rng>
CVector random_unit_vector(Eigen::Index n, Rng& rng) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_gaussian(rng);
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

/// Haar-ish random unitary via QR of a complex Gaussian matrix with phase fix.
template <class Rng>
CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace lelm
