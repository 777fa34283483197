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

#include "gtest/gtest.h"
#include "lelm/nogo.hpp"

using namespace lelm;

namespace {

void expect_eliminated(const EliminationStep& s) {
  EXPECT_EQ(s.verdict, Verdict::eliminated) << s.name << ": " << (s.evidence.empty() ? "" : s.evidence.back());
  EXPECT_EQ(s.violations, 0) << s.name;
  EXPECT_GT(s.samples, 0) << s.name;
  EXPECT_TRUE(s.well_formed()) << s.name;
}

}  // namespace

TEST(nogo, verdict_round_trip) {
  for (auto v : {Verdict::eliminated, Verdict::survived}) EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_THROW(parse_verdict("maybe"), std::invalid_argument);
}

TEST(nogo, target_sets_are_winners) {
  EXPECT_EQ(classify_tictactoe(set_a()), TicTacToeClass::winner);
  EXPECT_EQ(classify_tictactoe(set_b()), TicTacToeClass::winner);
  // Both targets sit in the single 72-element winner orbit.
  const auto a = orbit(set_a());
  EXPECT_EQ(a.size(), 72u);
  EXPECT_NE(std::find(a.begin(), a.end(), set_b()), a.end());
}

TEST(nogo, eliminated_without_evidence_is_malformed) {
  EliminationStep s{"x", set_a(), Verdict::eliminated};
  EXPECT_FALSE(s.well_formed());
  s.evidence.push_back("why");
  EXPECT_TRUE(s.well_formed());
  EXPECT_TRUE((EliminationStep{"y", set_a(), Verdict::survived}).well_formed());
}

TEST(nogo, single_channel_steps) {
  const auto steps = single_channel_elimination(200, 5);
  ASSERT_EQ(steps.size(), 3u);
  for (const auto& s : steps) {
    expect_eliminated(s);
    EXPECT_EQ(s.target_set, set_a());
  }
}

TEST(nogo, four_ket_step) { expect_eliminated(four_ket_elimination(200, 5)); }

TEST(nogo, set_b_structure_steps) {
  const auto steps = setB_structure_elimination(200, 5);
  ASSERT_EQ(steps.size(), 3u);
  for (const auto& s : steps) {
    expect_eliminated(s);
    EXPECT_EQ(s.target_set, set_b());
  }
}

TEST(nogo, six_ket_contradiction_chain) {
  const auto s = six_ket_contradiction(2000, 5);
  expect_eliminated(s);
  ASSERT_FALSE(s.proof.empty());
  for (const auto& p : s.proof) EXPECT_TRUE(p.verified) << p.name << ": " << p.statement;
  bool product = false;
  for (const auto& p : s.proof) product |= p.rule == "product-of-binomials";
  EXPECT_TRUE(product);
}

TEST(nogo, six_ket_chain_without_sampling) {
  const auto s = six_ket_contradiction(0, 5);
  EXPECT_EQ(s.verdict, Verdict::eliminated);
}

TEST(nogo, fermions_rejected) {
  EXPECT_THROW(single_channel_elimination(10, 1, Statistics::fermion), std::invalid_argument);
  EXPECT_THROW(four_ket_elimination(10, 1, Statistics::fermion), std::invalid_argument);
  EXPECT_THROW(setB_structure_elimination(10, 1, Statistics::fermion), std::invalid_argument);
  EXPECT_THROW(six_ket_contradiction(10, 1, Statistics::fermion), std::invalid_argument);
  EXPECT_THROW(projective_qutrit_nogo(10, 1, Statistics::fermion), std::invalid_argument);
}

TEST(nogo, single_channel_covariance_holds) { EXPECT_TRUE(single_channel_covariance(60, 3)); }

TEST(nogo, gram_polynomial_matches_numeric_condition) {
  std::mt19937_64 rng(9);
  const BellLabel k(3, 0, 1), l(3, 1, 0);
  const auto poly = gram_polynomial(k, l, Statistics::boson);
  for (int t = 0; t < 100; ++t) {
    const CVector nu = random_unit_vector(6, rng);
    CVector values(6);
    for (int i = 0; i < 6; ++i) values[i] = nu[six_ket_slot(i)];
    const Complex expected = annihilate(DetectorMode(3, nu), bell_state(k, Statistics::boson))
                                 .dot(annihilate(DetectorMode(3, nu), bell_state(l, Statistics::boson)));
    EXPECT_NEAR(std::abs(poly.evaluate(values) - expected), 0.0, 1e-12);
  }
}

TEST(nogo, identity_demo_qutrit) {
  const auto demo = identity_apparatus_demo(3);
  ASSERT_EQ(demo.labels.size(), 3u);
  EXPECT_TRUE(demo.disjoint);
  for (const auto& sig : demo.signatures) EXPECT_EQ(sig.size(), 3u);
  // Psi_0^0 fires (jL, jR).
  for (const auto& [i, j] : demo.signatures[0]) {
    EXPECT_EQ(mode_from_index(i, 3).value, mode_from_index(j, 3).value);
    EXPECT_NE(is_left(i), is_left(j));
  }
}

TEST(nogo, identity_demo_qubit) {
  const auto demo = identity_apparatus_demo(2, {BellLabel(2, 0, 0), BellLabel(2, 1, 0)});
  EXPECT_TRUE(demo.disjoint);
  EXPECT_EQ(demo.signatures[0].size(), 2u);
  EXPECT_EQ(demo.signatures[1].size(), 2u);
}

TEST(nogo, identity_demo_same_class_overlaps) {
  EXPECT_FALSE(identity_apparatus_demo(3, {BellLabel(3, 0, 0), BellLabel(3, 0, 1)}).disjoint);
  EXPECT_TRUE(identity_apparatus_demo(3, {BellLabel(3, 2, 1)}).disjoint);
  EXPECT_THROW(identity_apparatus_demo(3, {BellLabel(2, 0, 0)}), std::domain_error);
}

TEST(nogo, projective_bound) {
  const auto bound = projective_qutrit_nogo(200, 7);
  EXPECT_TRUE(bound.verified);
  EXPECT_EQ(bound.max_distinguishable, 3);
  EXPECT_EQ(bound.total, 9);
  EXPECT_EQ(bound.steps.size(), 8u);
  for (const auto& s : bound.steps) expect_eliminated(s);
}

TEST(nogo, deterministic_for_seed) {
  const auto a = four_ket_elimination(100, 11);
  const auto b = four_ket_elimination(100, 11);
  EXPECT_EQ(a.evidence, b.evidence);
  EXPECT_EQ(a.samples, b.samples);
}
