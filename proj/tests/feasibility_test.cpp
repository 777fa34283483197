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
#include "lelm/feasibility.hpp"
#include "lelm/symmetry.hpp"

using namespace lelm;

namespace {

BellSet one_per_class() { return BellSet::of(3, {{0, 0}, {1, 0}, {2, 0}}); }

SearchConfig quick(int restarts = 20) {
  SearchConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

}  // namespace

TEST(feasibility, residual_examples) {
  const auto l0 = DetectorMode::basis(0, Channel::L, 3);
  EXPECT_NEAR(residual(one_per_class(), l0, Statistics::boson), 0.0, 1e-15);
  EXPECT_NEAR(residual(BellSet::of(3, {{0, 0}, {0, 1}}), l0, Statistics::boson), 1.0 / 9.0, 1e-15);
  EXPECT_THROW(residual(one_per_class(), DetectorMode(3, CVector::Zero(6)), Statistics::boson), std::domain_error);
}

TEST(feasibility, residual_matches_gram_conditions) {
  std::mt19937_64 rng(1);
  const BellSet set = BellSet::of(3, {{0, 0}, {0, 1}, {1, 1}, {2, 2}});
  for (int t = 0; t < 100; ++t) {
    const auto s = t % 2 ? Statistics::fermion : Statistics::boson;
    const DetectorMode mode(3, random_unit_vector(6, rng));
    double expected = 0.0;
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        expected += std::norm(gram_condition(set.labels()[a], set.labels()[b], mode, s));
    const double r = residual(set, mode, s);
    EXPECT_GE(r, 0.0);
    EXPECT_NEAR(r, expected, 1e-14);
    EXPECT_NEAR(detector_conditions(set, s).residual(mode.nu()), expected, 1e-14);
  }
}

TEST(feasibility, gradient_matches_finite_differences) {
  std::mt19937_64 rng(2);
  const auto sys = detector_conditions(BellSet::of(3, {{0, 0}, {0, 1}, {1, 0}, {2, 2}}), Statistics::boson);
  const double h = 1e-6;
  for (int t = 0; t < 50; ++t) {
    const CVector nu = random_unit_vector(6, rng);
    const Eigen::VectorXd g = sys.gradient(nu);
    Eigen::VectorXd fd(12);
    for (int j = 0; j < 12; ++j) {
      CVector plus = nu, minus = nu;
      const Complex step = j < 6 ? Complex(h, 0) : Complex(0, h);
      plus[j % 6] += step;
      minus[j % 6] -= step;
      fd[j] = (sys.residual(plus) - sys.residual(minus)) / (2 * h);
    }
    EXPECT_LE((g - fd).norm(), 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST(feasibility, config_validation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.accept_tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(feasibility, status_names_round_trip) {
  for (auto s : {SearchStatus::instance_found, SearchStatus::no_instance_found, SearchStatus::exact_infeasible})
    EXPECT_EQ(parse_search_status(to_string(s)), s);
  EXPECT_THROW(parse_search_status("maybe"), std::invalid_argument);
}

TEST(feasibility, finds_instance_for_one_per_class) {
  const auto r = search_instance(one_per_class(), quick());
  EXPECT_EQ(r.status, SearchStatus::instance_found);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(r.witness->is_unit(1e-10));
  EXPECT_LE(residual(one_per_class(), *r.witness, Statistics::boson), SearchConfig{}.accept_tolerance);
}

TEST(feasibility, single_state_is_trivially_feasible) {
  const auto r = search_instance(BellSet::of(3, {{1, 2}}), quick());
  EXPECT_EQ(r.status, SearchStatus::instance_found);
  EXPECT_EQ(r.restarts_used, 0);
}

TEST(feasibility, loser_has_no_instance) {
  const BellSet loser = BellSet::of(3, {{0, 0}, {0, 1}, {2, 1}, {2, 2}});
  ASSERT_EQ(classify_tictactoe(loser), TicTacToeClass::loser);
  const auto r = search_instance(loser, SearchConfig{});
  EXPECT_EQ(r.status, SearchStatus::no_instance_found);
  EXPECT_GT(r.best_residual, kNoInstanceThreshold);
  EXPECT_FALSE(r.witness);
}

TEST(feasibility, winner_instances_are_genuine) {
  const BellSet winner = BellSet::of(3, {{0, 2}, {1, 1}, {1, 2}, {2, 0}});
  const auto r = search_instance(winner, SearchConfig{});
  if (r.status == SearchStatus::instance_found) {
    ASSERT_TRUE(r.witness);
    EXPECT_LE(residual(winner, *r.witness, Statistics::boson), SearchConfig{}.accept_tolerance);
  }
}

TEST(feasibility, deterministic_under_fixed_seed) {
  SearchConfig cfg = quick(10);
  cfg.record_trace = true;
  const BellSet set = BellSet::of(3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 1}});
  const auto a = search_instance(set, cfg, 17);
  const auto b = search_instance(set, cfg, 17);
  EXPECT_EQ(a.best_residual, b.best_residual);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.status, b.status);
  const auto c = search_instance(set, cfg, 18);
  EXPECT_NE(a.trace, c.trace);
}

TEST(feasibility, best_residual_never_increases_across_restarts) {
  SearchConfig cfg = quick(30);
  cfg.record_trace = true;
  const auto r = search_instance(BellSet::of(3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}}), cfg);
  ASSERT_EQ(static_cast<int>(r.trace.size()), r.restarts_used);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
  EXPECT_EQ(r.trace.back(), r.best_residual);
}

TEST(feasibility, batch_matches_individual_searches) {
  const SearchConfig cfg = quick(3);
  const auto batch = batch_classify(2, 3, cfg);
  ASSERT_EQ(batch.size(), 36u);
  const auto sets = enumerate_sets(2, 3);
  int found = 0;
  for (std::size_t i = 0; i < batch.size(); i += 7) {
    const auto single = search_instance(sets[i], cfg, i);
    EXPECT_EQ(single.best_residual, batch[i].best_residual);
  }
  for (const auto& r : batch) found += r.status == SearchStatus::instance_found;
  EXPECT_GT(found, 0);
}
