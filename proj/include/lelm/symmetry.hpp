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

// Channel-local equivalence transformations of qutrit Bell-state sets,
// tic-tac-toe classification and orbit computation.
//
// Each transformation is a pair of single-particle unitaries, one per input
// channel, that permutes Bell states up to a global phase. On labels it acts
// as an affine map of (c, p) over Z_d.

#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lelm/bell_set.hpp"
#include "lelm/fock.hpp"

namespace lelm {

/// (c, p) -> (cc*c + cp*p + c0, pc*c + pp*p + p0) mod d.
struct AffineLabelAction {
  int d = 3;
  int cc = 1, cp = 0, c0 = 0;
  int pc = 0, pp = 1, p0 = 0;

  static AffineLabelAction identity(int d) { return {d, 1, 0, 0, 0, 1, 0}; }

  BellLabel apply(const BellLabel& x) const {
    return {d, mod(long(cc) * x.c + long(cp) * x.p + c0, d), mod(long(pc) * x.c + long(pp) * x.p + p0, d)};
  }

  /// (this after other)(x) = this(other(x)).
  AffineLabelAction after(const AffineLabelAction& o) const {
    AffineLabelAction r;
    r.d = d;
    r.cc = mod(long(cc) * o.cc + long(cp) * o.pc, d);
    r.cp = mod(long(cc) * o.cp + long(cp) * o.pp, d);
    r.c0 = mod(long(cc) * o.c0 + long(cp) * o.p0 + c0, d);
    r.pc = mod(long(pc) * o.cc + long(pp) * o.pc, d);
    r.pp = mod(long(pc) * o.cp + long(pp) * o.pp, d);
    r.p0 = mod(long(pc) * o.c0 + long(pp) * o.p0 + p0, d);
    return r;
  }

  bool is_bijection() const {
    std::vector<bool> hit(d * d, false);
    for (int i = 0; i < d * d; ++i) {
      const int j = apply(BellLabel::from_ordinal(i, d)).ordinal();
      if (hit[j]) return false;
      hit[j] = true;
    }
    return true;
  }

  std::uint64_t apply(std::uint64_t mask) const {
    std::uint64_t out = 0;
    for (int i = 0; i < d * d; ++i)
      if (mask >> i & 1U) out |= std::uint64_t{1} << apply(BellLabel::from_ordinal(i, d)).ordinal();
    return out;
  }

  auto key() const { return std::array<int, 6>{cc, cp, c0, pc, pp, p0}; }
  friend bool operator==(const AffineLabelAction& a, const AffineLabelAction& b) { return a.key() == b.key(); }
};

struct IndexTransform {
  std::string name;  // "T1".."T4", "id", or a composite word such as "T4*T1"
  AffineLabelAction label_action;
  CMatrix mode_action_left;   // d x d, acts on the value space of channel L
  CMatrix mode_action_right;  // d x d, acts on the value space of channel R

  int d() const { return label_action.d; }

  /// Full (2d)x(2d) single-particle unitary in the interleaved phi basis.
  CMatrix single_particle_unitary() const {
    const int n = d();
    CMatrix u = CMatrix::Zero(2 * n, 2 * n);
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s) {
        u(2 * t, 2 * s) = mode_action_left(t, s);
        u(2 * t + 1, 2 * s + 1) = mode_action_right(t, s);
      }
    return u;
  }

  /// (this after other).
  IndexTransform after(const IndexTransform& o) const {
    std::string word = name == "id" ? o.name : (o.name == "id" ? name : name + "*" + o.name);
    return {word, label_action.after(o.label_action), mode_action_left * o.mode_action_left,
            mode_action_right * o.mode_action_right};
  }

  static IndexTransform identity(int d) {
    return {"id", AffineLabelAction::identity(d), CMatrix::Identity(d, d), CMatrix::Identity(d, d)};
  }
};

inline void require_qutrit(int d, const char* what) {
  if (d != 3) throw std::domain_error(std::string(what) + ": only defined for qutrits (d = 3)");
}

/// The four generators. T3 carries the conjugate of the literal phase
/// assignment |0,L> -> w|0,L>, |0,R> -> w^2|0,R>, which realizes
/// p -> p + c; the literal assignment is its inverse (p -> p - c) and
/// generates the same group.
inline std::array<IndexTransform, 4> generators() {
  constexpr int d = 3;
  const Complex w = root_of_unity(1, d);
  const CMatrix id = CMatrix::Identity(d, d);

  CMatrix shift = CMatrix::Zero(d, d);
  for (int s = 0; s < d; ++s) shift(mod(s + 1, d), s) = 1.0;
  IndexTransform t1{"T1", {d, 1, 0, 1, 0, 1, 0}, id, shift};

  CMatrix phase_left = CMatrix::Zero(d, d);
  for (int s = 0; s < d; ++s) phase_left(s, s) = root_of_unity(s, d);
  IndexTransform t2{"T2", {d, 1, 0, 0, 0, 1, 1}, phase_left, id};

  CMatrix zero_left = id, zero_right = id;
  zero_left(0, 0) = w * w;
  zero_right(0, 0) = w;
  IndexTransform t3{"T3", {d, 1, 0, 0, 1, 1, 0}, zero_left, zero_right};

  const Complex on = std::polar(1.0, kPi / 6.0);
  const Complex off = std::polar(1.0, 5.0 * kPi / 6.0);
  CMatrix fourier_left(d, d);
  for (int t = 0; t < d; ++t)
    for (int s = 0; s < d; ++s) fourier_left(t, s) = (t == s ? on : off) / std::sqrt(3.0);
  IndexTransform t4{"T4", {d, 1, 1, 0, 0, 1, 0}, fourier_left, fourier_left.conjugate()};

  return {t1, t2, t3, t4};
}

inline BellLabel transform_label(const IndexTransform& t, const BellLabel& x) {
  if (t.d() != x.d) throw std::domain_error("transform_label: dimension mismatch");
  require_qutrit(x.d, "transform_label");
  return t.label_action.apply(x);
}

inline BellSet transform_set(const IndexTransform& t, const BellSet& s) {
  if (t.d() != s.d()) throw std::domain_error("transform_set: dimension mismatch");
  return BellSet::from_mask(s.d(), t.label_action.apply(s.mask()));
}

/// Applies the channel unitaries to the mode ket.
inline DetectorMode transform_mode(const IndexTransform& t, const DetectorMode& mode) {
  require_qutrit(mode.d(), "transform_mode");
  return DetectorMode::from_ket(mode.d(), t.single_particle_unitary() * mode.ket());
}

/// Applies the single-particle unitary to both particles: A -> U A U^T.
inline TwoParticleState transform_state(const IndexTransform& t, const TwoParticleState& state) {
  const CMatrix u = t.single_particle_unitary();
  return {state.d(), state.statistics(), u * state.amplitudes() * u.transpose()};
}

/// All group elements generated by T1..T4, in breadth-first order from the
/// identity; each element is the shortest word reaching its label action.
inline const std::vector<IndexTransform>& transform_group() {
  static const std::vector<IndexTransform> group = [] {
    const auto gens = generators();
    std::vector<IndexTransform> elements{IndexTransform::identity(3)};
    std::set<std::array<int, 6>> seen{elements.front().label_action.key()};
    for (std::size_t head = 0; head < elements.size(); ++head) {
      for (const auto& g : gens) {
        IndexTransform next = g.after(elements[head]);
        if (seen.insert(next.label_action.key()).second) elements.push_back(std::move(next));
      }
    }
    return elements;
  }();
  return group;
}

struct TicTacToeDiagram {
  std::array<std::array<bool, 3>, 3> grid{};  // grid[c][p]

  static TicTacToeDiagram of(const BellSet& s) {
    require_qutrit(s.d(), "TicTacToeDiagram");
    TicTacToeDiagram t;
    for (const auto& l : s) t.grid[l.c][l.p] = true;
    return t;
  }

  int cell_count() const {
    int n = 0;
    for (const auto& row : grid)
      for (bool b : row) n += b ? 1 : 0;
    return n;
  }

  /// Rows top to bottom (c = 0..2), "X" for members, "." otherwise.
  std::string str() const {
    std::string out;
    for (int c = 0; c < 3; ++c) {
      for (int p = 0; p < 3; ++p) out += grid[c][p] ? 'X' : '.';
      if (c < 2) out += '/';
    }
    return out;
  }
};

/// The twelve winning three-cell patterns: 3 rows, 3 columns and the 6
/// transversals (one cell in every row and every column), as label masks.
inline const std::vector<std::uint64_t>& winning_patterns() {
  static const std::vector<std::uint64_t> patterns = [] {
    std::vector<std::uint64_t> out;
    auto bit = [](int c, int p) { return std::uint64_t{1} << (3 * c + p); };
    for (int r = 0; r < 3; ++r) {
      out.push_back(bit(r, 0) | bit(r, 1) | bit(r, 2));
      out.push_back(bit(0, r) | bit(1, r) | bit(2, r));
    }
    std::array<int, 3> perm{0, 1, 2};
    do {
      out.push_back(bit(0, perm[0]) | bit(1, perm[1]) | bit(2, perm[2]));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return patterns;
}

inline bool contains_winning_pattern(std::uint64_t mask) {
  const auto& w = winning_patterns();
  return std::any_of(w.begin(), w.end(), [mask](std::uint64_t p) { return (mask & p) == p; });
}

enum class TicTacToeClass { winner, loser, anti_winner, anti_loser };

inline std::string_view to_string(TicTacToeClass c) {
  switch (c) {
    case TicTacToeClass::winner: return "winner";
    case TicTacToeClass::loser: return "loser";
    case TicTacToeClass::anti_winner: return "anti-winner";
    case TicTacToeClass::anti_loser: return "anti-loser";
  }
  return "?";
}

inline TicTacToeClass classify_tictactoe(const BellSet& s) {
  require_qutrit(s.d(), "classify_tictactoe");
  constexpr std::uint64_t full = (std::uint64_t{1} << 9) - 1;
  if (s.size() == 4) return contains_winning_pattern(s.mask()) ? TicTacToeClass::winner : TicTacToeClass::loser;
  if (s.size() == 6) {
    return contains_winning_pattern(full & ~s.mask()) ? TicTacToeClass::anti_winner : TicTacToeClass::anti_loser;
  }
  throw std::domain_error("classify_tictactoe: only 4-sets and 6-sets are classified");
}

/// Closure of {s} under the generators, in canonical order.
inline std::vector<BellSet> orbit(const BellSet& s) {
  require_qutrit(s.d(), "orbit");
  const auto gens = generators();
  std::set<std::uint64_t> seen{s.mask()};
  std::deque<std::uint64_t> frontier{s.mask()};
  while (!frontier.empty()) {
    const std::uint64_t m = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      const std::uint64_t next = g.label_action.apply(m);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<BellSet> out;
  for (auto m : seen) out.push_back(BellSet::from_mask(3, m));
  std::sort(out.begin(), out.end());
  return out;
}

/// Partition of all k-sets into orbits, each orbit in canonical order and
/// orbits ordered by their first member.
inline std::vector<std::vector<BellSet>> orbit_partition(int k) {
  std::vector<std::vector<BellSet>> out;
  std::set<std::uint64_t> assigned;
  for (const auto& s : enumerate_sets(k, 3)) {
    if (assigned.count(s.mask())) continue;
    auto o = orbit(s);
    for (const auto& m : o) assigned.insert(m.mask());
    out.push_back(std::move(o));
  }
  return out;
}

/// A group element g with g(a) = b, preferring the shortest generator word.
inline std::optional<IndexTransform> find_transform(const BellSet& a, const BellSet& b) {
  require_qutrit(a.d(), "find_transform");
  if (a.size() != b.size() || a.d() != b.d()) return std::nullopt;
  for (const auto& g : transform_group()) {
    if (g.label_action.apply(a.mask()) == b.mask()) return g;
  }
  return std::nullopt;
}

}  // namespace lelm
