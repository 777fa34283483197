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

// Checked derivation chains over vanishing polynomial relations.
//
// Every step is re-verified by the chain itself: linear steps by solving for
// an explicit combination of earlier relations (and their conjugates) and
// checking the identity coefficient by coefficient, product steps by checking
// that both sides become moduli squared with opposite signs.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lelm/polynomial.hpp"

namespace lelm {

struct ProofStep {
  std::string name;
  std::string rule;  // hypothesis | linear-combination | product-of-binomials | zero-propagation
  std::string statement;
  bool verified = false;
  /// Residual of the identity check (largest coefficient mismatch).
  double residual = 0.0;
  /// For linear steps: weights on the named relations ("~name" marks a conjugate).
  std::vector<std::pair<std::string, Complex>> combination;
};

class ProofChain {
 public:
  explicit ProofChain(std::vector<std::string> variable_names) : names_(std::move(variable_names)) {}

  int variables() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<ProofStep>& steps() const { return steps_; }
  const Polynomial& relation(const std::string& name) const { return relations_.at(name); }

  bool all_verified() const {
    return std::all_of(steps_.begin(), steps_.end(), [](const ProofStep& s) { return s.verified; });
  }

  /// Records the hypothesis p = 0.
  void assume(const std::string& name, const Polynomial& p) {
    relations_[name] = p;
    steps_.push_back({name, "hypothesis", p.str(names_) + " = 0", true, 0.0, {}});
  }

  /// Derives target = 0 as a complex-linear combination of the named relations
  /// and their conjugates.
  bool derive_linear(const std::string& name, const Polynomial& target, const std::vector<std::string>& from) {
    std::vector<Polynomial> columns;
    std::vector<std::string> labels;
    for (const auto& f : from) {
      const Polynomial& p = relations_.at(f);
      columns.push_back(p);
      labels.push_back(f);
      columns.push_back(p.conj());
      labels.push_back("~" + f);
    }
    std::map<Monomial, int> row_of;
    auto index = [&](const Polynomial& p) {
      for (const auto& [m, c] : p.terms()) row_of.emplace(m, static_cast<int>(row_of.size()));
    };
    for (const auto& c : columns) index(c);
    index(target);

    CMatrix system = CMatrix::Zero(static_cast<Eigen::Index>(row_of.size()), static_cast<Eigen::Index>(columns.size()));
    CVector rhs = CVector::Zero(static_cast<Eigen::Index>(row_of.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [m, c] : columns[j].terms()) system(row_of.at(m), static_cast<Eigen::Index>(j)) = c;
    for (const auto& [m, c] : target.terms()) rhs(row_of.at(m)) = c;

    const CVector weights = system.completeOrthogonalDecomposition().solve(rhs);

    Polynomial combined(variables());
    ProofStep step{name, "linear-combination", target.str(names_) + " = 0", false, 0.0, {}};
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const Complex w = weights[static_cast<Eigen::Index>(j)];
      if (std::abs(w) < 1e-12) continue;
      step.combination.emplace_back(labels[j], w);
      combined = combined + w * columns[j];
    }
    const Polynomial diff = combined - target;
    for (const auto& [m, c] : diff.terms()) step.residual = std::max(step.residual, std::abs(c));
    step.verified = step.residual < 1e-10 && !target.is_zero();
    if (step.verified) register_relation(name, target);
    steps_.push_back(std::move(step));
    return steps_.back().verified;
  }

  /// Given relations A_k + B_k = 0, each with exactly two monomial terms,
  /// multiplies A_k = -B_k over k and accepts when the result reads
  /// (nonnegative) = -(positive) * (nonnegative), forcing both products to vanish.
  bool derive_product(const std::string& name, const std::vector<std::string>& binomials) {
    ProofStep step{name, "product-of-binomials", "", false, 0.0, {}};
    std::vector<std::vector<MonomialTerm>> parts;
    for (const auto& b : binomials) {
      const Polynomial& p = relations_.at(b);
      if (p.size() != 2) {
        step.statement = "relation " + b + " is not a binomial";
        steps_.push_back(std::move(step));
        return false;
      }
      std::vector<MonomialTerm> terms;
      for (const auto& [m, c] : p.terms()) terms.push_back({m, c});
      parts.push_back(std::move(terms));
    }
    const std::size_t k = parts.size();
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << k); ++choice) {
      Monomial lhs(2 * names_.size(), 0), rhs(2 * names_.size(), 0);
      Complex lhs_coef = 1.0, rhs_coef = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& a = parts[i][choice >> i & 1U];
        const auto& b = parts[i][1 - (choice >> i & 1U)];
        for (std::size_t e = 0; e < lhs.size(); ++e) {
          lhs[e] += a.exponents[e];
          rhs[e] += b.exponents[e];
        }
        lhs_coef *= a.coefficient;
        rhs_coef *= -b.coefficient;
      }
      if (!is_hermitian_square(lhs) || !is_hermitian_square(rhs)) continue;
      // lhs_coef * X = rhs_coef * Y with X, Y >= 0.
      const Complex ratio = rhs_coef / lhs_coef;
      if (std::abs(ratio.imag()) > 1e-10 * std::abs(ratio) || ratio.real() >= 0) continue;
      Polynomial left(variables()), right(variables());
      left.add_term(lhs, 1.0);
      right.add_term(rhs, 1.0);
      step.statement = left.str(names_) + " = " + format_real(ratio.real()) + " * " + right.str(names_) +
                       ", both sides nonnegative => both vanish";
      step.verified = true;
      zero_groups_.push_back(support(lhs));
      zero_groups_.push_back(support(rhs));
      break;
    }
    if (!step.verified) step.statement = "no sign assignment yields a product of moduli with opposite signs";
    steps_.push_back(std::move(step));
    return steps_.back().verified;
  }

  /// "At least one variable in each group vanishes" facts collected so far.
  const std::vector<std::vector<int>>& zero_groups() const { return zero_groups_; }

  /// Variables forced to zero: a zero group lying inside one equal-modulus
  /// class forces the whole class to zero.
  std::vector<int> forced_zero() const {
    const int n = variables();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : equal_modulus_) parent[find(a)] = find(b);
    std::set<int> zero_roots;
    for (const auto& group : zero_groups_) {
      if (group.empty()) continue;
      const int root = find(group.front());
      if (std::all_of(group.begin(), group.end(), [&](int v) { return find(v) == root; })) zero_roots.insert(root);
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
      if (zero_roots.count(find(v))) out.push_back(v);
    return out;
  }

  /// Appends a zero-propagation step summarizing forced_zero(); returns true
  /// when every variable is forced to vanish.
  bool conclude_all_zero(const std::string& name) {
    const auto zero = forced_zero();
    std::string vars;
    for (int v : zero) vars += (vars.empty() ? "" : ", ") + names_[v];
    const bool all = static_cast<int>(zero.size()) == variables();
    steps_.push_back({name, "zero-propagation",
                      all ? "every coefficient vanishes: " + vars
                          : "only forced to zero: {" + vars + "}",
                      all, 0.0, {}});
    return all;
  }

  /// Appends a step recording that each product group contains a vanishing
  /// variable, which contradicts the assumption that all variables are nonzero.
  bool conclude_some_zero(const std::string& name) {
    std::string text;
    for (const auto& g : zero_groups_) {
      std::string vars;
      for (int v : g) vars += (vars.empty() ? "" : ", ") + names_[v];
      text += (text.empty() ? "" : "; ") + std::string("one of {") + vars + "} vanishes";
    }
    const bool ok = !zero_groups_.empty();
    steps_.push_back({name, "zero-propagation", ok ? text + " => not all coefficients nonzero" : "no zero facts derived",
                      ok, 0.0, {}});
    return ok;
  }

 private:
  static std::string format_real(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
  }

  void register_relation(const std::string& name, const Polynomial& p) {
    relations_[name] = p;
    std::vector<MonomialTerm> terms;
    for (const auto& [m, c] : p.terms()) terms.push_back({m, c});
    if (terms.size() == 1) {
      zero_groups_.push_back(support(terms[0].exponents));
      return;
    }
    // |z_a|^2 - |z_b|^2 (up to a common real scale) records |z_a| = |z_b|.
    if (terms.size() == 2) {
      const auto& [ma, ca] = terms[0];
      const auto& [mb, cb] = terms[1];
      const auto sa = support(ma);
      const auto sb = support(mb);
      const bool quadratic_moduli = is_hermitian_square(ma) && is_hermitian_square(mb) && sa.size() == 1 &&
                                    sb.size() == 1 && ma[sa[0]] == 1 && mb[sb[0]] == 1;
      const Complex ratio = ca / cb;
      if (quadratic_moduli && std::abs(ratio + 1.0) < 1e-10) equal_modulus_.emplace_back(sa[0], sb[0]);
    }
  }

  std::vector<std::string> names_;
  std::map<std::string, Polynomial> relations_;
  std::vector<ProofStep> steps_;
  std::vector<std::vector<int>> zero_groups_;
  std::vector<std::pair<int, int>> equal_modulus_;
};

}  // namespace lelm
