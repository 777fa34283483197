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

#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "lelm/symmetry.hpp"

using namespace lelm;

namespace {

constexpr double kTight = 1e-12;

const IndexTransform& gen(int i) {
  static const auto g = generators();
  return g[i - 1];
}

// Row, column, or one cell per row and column.
bool oracle_winning_triple(const std::vector<BellLabel>& t) {
  std::set<int> cs, ps;
  for (const auto& l : t) {
    cs.insert(l.c);
    ps.insert(l.p);
  }
  return cs.size() == 1 || ps.size() == 1 || (cs.size() == 3 && ps.size() == 3);
}

}  // namespace

TEST(symmetry, label_examples) {
  EXPECT_EQ(transform_label(gen(1), BellLabel(3, 0, 0)), BellLabel(3, 1, 0));
  EXPECT_EQ(transform_label(gen(3), BellLabel(3, 2, 1)), BellLabel(3, 2, 0));
  EXPECT_EQ(transform_label(gen(4), BellLabel(3, 1, 2)), BellLabel(3, 0, 2));
  EXPECT_EQ(transform_label(gen(2), BellLabel(3, 1, 2)), BellLabel(3, 1, 0));
  EXPECT_THROW(transform_label(gen(1), BellLabel(2, 0, 0)), std::domain_error);
}

TEST(symmetry, mode_examples) {
  const Complex w = root_of_unity(1, 3);
  auto ket_of = [](int value, Channel ch) { return DetectorMode::basis(value, ch, 3); };

  CVector expected = CVector::Zero(6);
  expected[mode_index(1, Channel::L, 3).index] = w;
  EXPECT_LT((transform_mode(gen(2), ket_of(1, Channel::L)).ket() - expected).norm(), kTight);

  expected.setZero();
  expected[mode_index(1, Channel::R, 3).index] = 1.0;
  EXPECT_LT((transform_mode(gen(1), ket_of(0, Channel::R)).ket() - expected).norm(), kTight);

  expected.setZero();
  expected[mode_index(0, Channel::L, 3).index] = std::polar(1.0, kPi / 6.0) / std::sqrt(3.0);
  expected[mode_index(1, Channel::L, 3).index] = std::polar(1.0, 5.0 * kPi / 6.0) / std::sqrt(3.0);
  expected[mode_index(2, Channel::L, 3).index] = std::polar(1.0, 5.0 * kPi / 6.0) / std::sqrt(3.0);
  EXPECT_LT((transform_mode(gen(4), ket_of(0, Channel::L)).ket() - expected).norm(), kTight);
}

TEST(symmetry, mode_actions_are_unitary_and_norm_preserving) {
  std::mt19937_64 rng(1);
  for (const auto& g : transform_group()) {
    const CMatrix u = g.single_particle_unitary();
    EXPECT_LT((u.adjoint() * u - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12) << g.name;
    const DetectorMode m(3, random_unit_vector(6, rng));
    EXPECT_NEAR(transform_mode(g, m).norm(), 1.0, 1e-12);
  }
}

TEST(symmetry, state_and_label_actions_agree_up_to_phase) {
  for (auto s : {Statistics::boson, Statistics::fermion})
    for (const auto& g : transform_group())
      for (int i = 0; i < 9; ++i) {
        const auto x = BellLabel::from_ordinal(i, 3);
        const Complex overlap = inner_product(bell_state(transform_label(g, x), s), transform_state(g, bell_state(x, s)));
        EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10) << g.name << " on " << x.str();
      }
}

TEST(symmetry, t4_global_phase) {
  for (int i = 0; i < 9; ++i) {
    const auto x = BellLabel::from_ordinal(i, 3);
    const Complex overlap =
        inner_product(bell_state(transform_label(gen(4), x), Statistics::boson),
                      transform_state(gen(4), bell_state(x, Statistics::boson)));
    const Complex expected = x.p == 0 ? Complex(1.0) : std::polar(1.0, 4.0 * kPi / 3.0);
    EXPECT_NEAR(std::abs(overlap - expected), 0.0, 1e-10) << x.str();
  }
}

TEST(symmetry, generated_group_is_affine_and_finite) {
  const auto& group = transform_group();
  EXPECT_EQ(group.front().name, "id");
  std::set<std::array<int, 6>> keys;
  for (const auto& g : group) {
    EXPECT_TRUE(g.label_action.is_bijection());
    keys.insert(g.label_action.key());
  }
  EXPECT_EQ(keys.size(), group.size());
  // Closed under composition.
  for (const auto& a : group)
    for (int i = 1; i <= 4; ++i) EXPECT_TRUE(keys.count(gen(i).label_action.after(a.label_action).key()));
}

TEST(symmetry, winning_patterns_match_exhaustive_oracle) {
  std::set<std::uint64_t> oracle;
  for (const auto& t : enumerate_sets(3, 3))
    if (oracle_winning_triple(t.labels())) oracle.insert(t.mask());
  EXPECT_EQ(oracle.size(), 12u);
  const auto& w = winning_patterns();
  EXPECT_EQ(std::set<std::uint64_t>(w.begin(), w.end()), oracle);
}

TEST(symmetry, classification_examples) {
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 0}, {0, 1}, {2, 1}, {2, 2}})), TicTacToeClass::loser);
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 2}, {1, 1}, {1, 2}, {2, 0}})), TicTacToeClass::winner);
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 1}, {1, 0}, {1, 1}, {2, 2}})), TicTacToeClass::winner);
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 0}, {0, 2}, {1, 1}, {2, 1}})), TicTacToeClass::loser);
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 0}, {0, 2}, {1, 1}, {1, 2}, {2, 0}, {2, 1}})),
            TicTacToeClass::anti_winner);
  EXPECT_EQ(classify_tictactoe(BellSet::of(3, {{0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}})),
            TicTacToeClass::anti_loser);
  EXPECT_THROW(classify_tictactoe(BellSet::of(3, {{0, 0}, {0, 1}, {0, 2}})), std::domain_error);
  EXPECT_THROW(classify_tictactoe(BellSet::of(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})), std::domain_error);
}

TEST(symmetry, diagram_cells_match_set_size) {
  for (int k = 1; k <= 9; ++k)
    for (const auto& s : enumerate_sets(k, 3)) EXPECT_EQ(TicTacToeDiagram::of(s).cell_count(), k);
  EXPECT_EQ(TicTacToeDiagram::of(BellSet::of(3, {{0, 0}, {1, 2}})).str(), "X../..X/...");
}

TEST(symmetry, enumeration_counts) {
  EXPECT_EQ(enumerate_sets(4, 3).size(), 126u);
  EXPECT_EQ(enumerate_sets(5, 3).size(), 126u);
  EXPECT_EQ(enumerate_sets(6, 3).size(), 84u);
  EXPECT_EQ(enumerate_sets(9, 3).size(), 1u);
  EXPECT_THROW(enumerate_sets(0, 3), std::domain_error);
  EXPECT_THROW(enumerate_sets(10, 3), std::domain_error);
  const auto sets = enumerate_sets(4, 3);
  EXPECT_TRUE(std::is_sorted(sets.begin(), sets.end()));
}

TEST(symmetry, four_set_orbits) {
  const auto parts = orbit_partition(4);
  std::multiset<std::size_t> sizes;
  for (const auto& o : parts) {
    sizes.insert(o.size());
    const auto cls = classify_tictactoe(o.front());
    for (const auto& s : o) EXPECT_EQ(classify_tictactoe(s), cls);
    EXPECT_EQ(o.size(), cls == TicTacToeClass::winner ? 72u : 54u);
  }
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{54, 72}));
}

TEST(symmetry, six_set_orbits) {
  const auto parts = orbit_partition(6);
  std::multiset<std::size_t> sizes;
  for (const auto& o : parts) {
    sizes.insert(o.size());
    const auto cls = classify_tictactoe(o.front());
    for (const auto& s : o) EXPECT_EQ(classify_tictactoe(s), cls);
  }
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{12, 72}));
}

TEST(symmetry, classification_is_orbit_invariant) {
  for (int k : {4, 6})
    for (const auto& s : enumerate_sets(k, 3))
      for (const auto& g : transform_group()) EXPECT_EQ(classify_tictactoe(transform_set(g, s)), classify_tictactoe(s));
}

TEST(symmetry, find_transform_examples) {
  const BellSet fig4 = BellSet::of(3, {{0, 2}, {1, 1}, {1, 2}, {2, 0}});
  const BellSet fig5 = BellSet::of(3, {{0, 1}, {1, 0}, {1, 1}, {2, 2}});
  const BellSet loser = BellSet::of(3, {{0, 0}, {0, 2}, {1, 1}, {2, 1}});

  const auto same = find_transform(fig4, fig4);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->name, "id");

  EXPECT_FALSE(find_transform(loser, fig4));

  const auto g = find_transform(fig4, fig5);
  ASSERT_TRUE(g);
  EXPECT_NE(g->name, "id");
  EXPECT_EQ(transform_set(*g, fig4), fig5);
}
