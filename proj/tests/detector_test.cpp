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

#include <random>

#include "gtest/gtest.h"
#include "lelm/detector.hpp"

using namespace lelm;

namespace {

constexpr double kTight = 1e-12;

TwoParticleState sym(int a, int b, int d = 3) {
  CMatrix j = CMatrix::Zero(d, d);
  j(a, b) = 1.0;
  return TwoParticleState::from_joint_kets(j, Statistics::boson);
}

CMatrix random_joint(int d, std::mt19937_64& rng, double zero_probability) {
  std::bernoulli_distribution zero(zero_probability);
  CMatrix j(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) j(a, b) = zero(rng) ? Complex(0) : nonzero_complex_gaussian(rng, 0.05);
  if (j.norm() == 0.0) j(0, 0) = 1.0;
  return j;
}

}  // namespace

TEST(detector, gram_examples) {
  const auto l0 = DetectorMode::basis(0, Channel::L, 3);
  EXPECT_NEAR(std::abs(gram_condition(BellLabel(3, 0, 0), BellLabel(3, 1, 0), l0, Statistics::boson)), 0.0, kTight);
  EXPECT_NEAR(std::abs(gram_condition(BellLabel(3, 0, 0), BellLabel(3, 0, 1), l0, Statistics::boson) - 1.0 / 3.0), 0.0,
              kTight);
  EXPECT_THROW(gram_condition(BellLabel(2, 0, 0), BellLabel(3, 0, 0), l0, Statistics::boson), std::domain_error);
}

TEST(detector, gram_is_hermitian_and_diagonal_nonnegative) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto s = i % 2 ? Statistics::fermion : Statistics::boson;
    const DetectorMode mode(3, random_unit_vector(6, rng));
    for (int k = 0; k < 9; ++k) {
      const auto lk = BellLabel::from_ordinal(k, 3);
      const Complex diag = gram_condition(lk, lk, mode, s);
      EXPECT_GE(diag.real(), 0.0);
      EXPECT_NEAR(diag.imag(), 0.0, kTight);
      for (int l = 0; l < 9; ++l) {
        const auto ll = BellLabel::from_ordinal(l, 3);
        EXPECT_NEAR(std::abs(gram_condition(lk, ll, mode, s) - std::conj(gram_condition(ll, lk, mode, s))), 0.0, kTight);
      }
    }
  }
}

// A basis mode leaves each Bell state with a single partner ket; states in
// different correlation classes leave different partners.
TEST(detector, basis_modes_separate_correlation_classes) {
  for (auto s : {Statistics::boson, Statistics::fermion})
    for (int d : {2, 3})
      for (int m = 0; m < 2 * d; ++m) {
        const auto sp = mode_from_index(m, d);
        const auto mode = DetectorMode::basis(sp.value, sp.channel, d);
        for (int x = 0; x < d * d; ++x)
          for (int y = 0; y < d * d; ++y) {
            const auto a = BellLabel::from_ordinal(x, d), b = BellLabel::from_ordinal(y, d);
            if (a.c == b.c) continue;
            EXPECT_NEAR(std::abs(gram_condition(a, b, mode, s)), 0.0, kTight);
          }
      }
}

TEST(detector, decompose_examples) {
  const CVector beta = bell_decompose(sym(0, 0));
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(beta[i]), i < 3 ? 1.0 / std::sqrt(3.0) : 0.0, kTight);

  const CVector unit = bell_decompose(bell_state(BellLabel(3, 1, 1), Statistics::boson));
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(unit[i]), i == 4 ? 1.0 : 0.0, kTight);

  CMatrix same_sector = CMatrix::Zero(6, 6);
  same_sector(0, 2) = same_sector(2, 0) = 1.0;  // |0,L>|1,L>
  EXPECT_THROW(bell_decompose(TwoParticleState(3, Statistics::boson, same_sector)), std::domain_error);
}

TEST(detector, decompose_round_trip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto s = i % 2 ? Statistics::fermion : Statistics::boson;
    const int d = 2 + i % 3;
    const auto st = TwoParticleState::from_joint_kets(random_joint(d, rng, 0.3), s);
    const auto back = bell_recompose(bell_decompose(st), d, s);
    EXPECT_LT((back.amplitudes() - st.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(detector, four_ket_signature_has_at_least_eight_bell_states) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const int a = i % 3;
    CVector ket = CVector::Zero(6);
    ket[mode_index(a, Channel::L, 3).index] = nonzero_complex_gaussian(rng, 0.05);
    for (int k = 0; k < 3; ++k) ket[mode_index((a + k) % 3, Channel::R, 3).index] = nonzero_complex_gaussian(rng, 0.05);
    const auto mode = DetectorMode::from_ket(3, ket);
    const auto c = correlation_census(detection_signature(mode, mode, Statistics::boson));
    EXPECT_GE(c.total_nonzero_bell, 8);
  }
}

TEST(detector, census_examples) {
  const auto single = correlation_census(sym(0, 0));
  EXPECT_EQ(single.joint_ket_counts(), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(single.total_nonzero_bell, 3);

  CMatrix s1 = CMatrix::Zero(3, 3);
  s1(0, 0) = 0.5;
  s1(0, 1) = Complex(0, 0.5);
  s1(0, 2) = std::sqrt(0.5);
  EXPECT_EQ(correlation_census(TwoParticleState::from_joint_kets(s1, Statistics::boson)).joint_ket_counts(),
            (std::vector<int>{1, 1, 1}));

  // |3-ket_1>|3-ket_2> with a, b, c = 0, 1, 2.
  CMatrix j = CMatrix::Zero(3, 3);
  j(0, 0) = 0.3;
  j(1, 1) = Complex(0.2, 0.4);
  j(2, 2) = -0.5;
  j(0, 1) = 0.1;
  j(1, 0) = Complex(0, 0.6);
  const auto c = correlation_census(TwoParticleState::from_joint_kets(j, Statistics::boson));
  EXPECT_EQ(c.joint_ket_counts(), (std::vector<int>{3, 1, 1}));
  EXPECT_GE(c.total_nonzero_bell, 7);
}

TEST(detector, census_structure_rules_on_random_signatures) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto c = correlation_census(TwoParticleState::from_joint_kets(random_joint(3, rng, 0.5), Statistics::boson));
    for (const auto& cls : c.classes)
      if (cls.joint_ket_count == 1) {
        EXPECT_EQ(cls.nonzero_bell_count(), 3);
      }
  }
  // Kets of one class proportional to a Bell state: exactly one coefficient in that class.
  for (int i = 0; i < 1000; ++i) {
    const int cc = i % 3, p = (i / 3) % 3;
    CMatrix j = CMatrix::Zero(3, 3);
    const Complex scale = nonzero_complex_gaussian(rng, 0.05);
    for (int k = 0; k < 3; ++k) j(k, (k + cc) % 3) = scale * root_of_unity(p * k, 3);
    const auto c = correlation_census(TwoParticleState::from_joint_kets(j, Statistics::boson));
    EXPECT_EQ(c.classes[cc].joint_ket_count, 3);
    EXPECT_EQ(c.classes[cc].nonzero_bell_count(), 1);
    EXPECT_NEAR(std::abs(c.classes[cc].bell_coefficients[p]), std::sqrt(3.0) * std::abs(scale), 1e-10);
  }
}

TEST(detector, conflict_examples) {
  const BellSet target = BellSet::of(3, {{0, 0}, {0, 1}, {1, 1}, {2, 2}});
  EXPECT_TRUE(signature_conflicts(sym(0, 0), target));
  EXPECT_FALSE(signature_conflicts(bell_state(BellLabel(3, 1, 1), Statistics::boson), target));
  EXPECT_FALSE(signature_conflicts(TwoParticleState(3, Statistics::boson), target));
}
