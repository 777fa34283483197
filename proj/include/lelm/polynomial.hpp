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

// Polynomials in complex variables z_0..z_{n-1} and their conjugates, with
// complex coefficients. Small and dense enough for the Hermitian forms that
// arise from pairwise orthogonality conditions.

#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lelm/core.hpp"

namespace lelm {

/// Exponents of z_0..z_{n-1} followed by exponents of conj(z_0)..conj(z_{n-1}).
using Monomial = std::vector<std::uint8_t>;

class Polynomial {
 public:
  explicit Polynomial(int variables = 0) : n_(variables) {}

  static Polynomial constant(int variables, Complex value) {
    Polynomial p(variables);
    p.add_term(Monomial(2 * variables, 0), value);
    return p;
  }

  /// z_i (conjugated = false) or conj(z_i).
  static Polynomial variable(int variables, int i, bool conjugated = false) {
    Polynomial p(variables);
    Monomial m(2 * variables, 0);
    m[conjugated ? variables + i : i] = 1;
    p.add_term(m, 1.0);
    return p;
  }

  /// sum_{a,b} conj(z_a) Q_ab z_b.
  static Polynomial hermitian_form(const CMatrix& q) {
    const int n = static_cast<int>(q.rows());
    Polynomial p(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (q(a, b) == Complex(0.0)) continue;
        Monomial m(2 * n, 0);
        m[n + a] += 1;
        m[b] += 1;
        p.add_term(m, q(a, b));
      }
    return p.pruned();
  }

  /// |z_i|^2
  static Polynomial modulus_squared(int variables, int i) {
    return variable(variables, i) * variable(variables, i, true);
  }

  int variables() const { return n_; }
  const std::map<Monomial, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, Complex c) {
    if (static_cast<int>(m.size()) != 2 * n_) throw std::domain_error("Polynomial: monomial arity mismatch");
    terms_[m] += c;
  }

  Polynomial pruned(double tol = 1e-14) const {
    Polynomial out(n_);
    for (const auto& [m, c] : terms_)
      if (std::abs(c) > tol) out.terms_.emplace(m, c);
    return out;
  }

  bool is_zero(double tol = 1e-12) const {
    for (const auto& [m, c] : terms_)
      if (std::abs(c) > tol) return false;
    return true;
  }

  Polynomial conj() const {
    Polynomial out(n_);
    for (const auto& [m, c] : terms_) {
      Monomial swapped(m.begin() + n_, m.end());
      swapped.insert(swapped.end(), m.begin(), m.begin() + n_);
      out.terms_[swapped] += std::conj(c);
    }
    return out;
  }

  Complex evaluate(const CVector& z) const {
    Complex total = 0.0;
    for (const auto& [m, c] : terms_) {
      Complex term = c;
      for (int i = 0; i < n_; ++i) {
        for (int e = 0; e < m[i]; ++e) term *= z[i];
        for (int e = 0; e < m[n_ + i]; ++e) term *= std::conj(z[i]);
      }
      total += term;
    }
    return total;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    check_arity(a, b);
    for (const auto& [m, c] : b.terms_) a.terms_[m] += c;
    return a.pruned();
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }
  friend Polynomial operator*(Complex s, Polynomial a) {
    for (auto& [m, c] : a.terms_) c *= s;
    return a.pruned();
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_arity(a, b);
    Polynomial out(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        out.terms_[m] += ca * cb;
      }
    return out.pruned();
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << format_coefficient(c);
      for (int i = 0; i < n_; ++i) {
        for (int e = 0; e < m[i]; ++e) os << '*' << names[i];
        for (int e = 0; e < m[n_ + i]; ++e) os << "*conj(" << names[i] << ')';
      }
    }
    return os.str();
  }

 private:
  static void check_arity(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_) throw std::domain_error("Polynomial: variable count mismatch");
  }

  static std::string format_coefficient(Complex c) {
    std::ostringstream os;
    os.precision(6);
    if (std::abs(c.imag()) < 1e-12) {
      os << c.real();
    } else {
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return os.str();
  }

  int n_;
  std::map<Monomial, Complex> terms_;
};

/// Coefficient and exponents of a single-term polynomial.
struct MonomialTerm {
  Monomial exponents;
  Complex coefficient;
};

/// True when the monomial equals prod |z_i|^{2k_i}, i.e. it is real and
/// nonnegative at every point.
inline bool is_hermitian_square(const Monomial& m) {
  const std::size_t n = m.size() / 2;
  for (std::size_t i = 0; i < n; ++i)
    if (m[i] != m[n + i]) return false;
  return true;
}

/// Variables with nonzero exponent.
inline std::vector<int> support(const Monomial& m) {
  const std::size_t n = m.size() / 2;
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (m[i] > 0 || m[n + i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace lelm
