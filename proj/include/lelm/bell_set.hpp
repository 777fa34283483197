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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <tuple>
#include <string>
#include <vector>

#include "lelm/fock.hpp"

namespace lelm {

/// Sorted, duplicate-free set of Bell labels sharing one dimension.
class BellSet {
 public:
  BellSet() = default;

  BellSet(int d, std::vector<BellLabel> labels) : d_(d), labels_(std::move(labels)) {
    require_dimension(d);
    for (const auto& l : labels_) {
      if (l.d != d) throw std::domain_error("BellSet: label dimension mismatch");
    }
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  }

  /// Convenience: BellSet::of(3, {{0,0},{0,1}}) with (c, p) pairs.
  static BellSet of(int d, std::initializer_list<std::pair<int, int>> cp) {
    std::vector<BellLabel> labels;
    for (auto [c, p] : cp) labels.emplace_back(d, c, p);
    return {d, std::move(labels)};
  }

  /// Bit i set <=> label with ordinal i is a member. Requires d*d <= 64.
  static BellSet from_mask(int d, std::uint64_t mask) {
    std::vector<BellLabel> labels;
    for (int i = 0; i < d * d; ++i)
      if (mask >> i & 1U) labels.push_back(BellLabel::from_ordinal(i, d));
    return {d, std::move(labels)};
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (const auto& l : labels_) m |= std::uint64_t{1} << l.ordinal();
    return m;
  }

  int d() const { return d_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<BellLabel>& labels() const { return labels_; }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool contains(const BellLabel& l) const { return std::binary_search(labels_.begin(), labels_.end(), l); }
  bool contains(const BellSet& other) const { return (other.mask() & ~mask()) == 0; }

  /// Compact "cp" form, e.g. "00,01,11,22".
  std::string str() const {
    std::string out;
    for (const auto& l : labels_) {
      if (!out.empty()) out += ',';
      out += std::to_string(l.c) + std::to_string(l.p);
    }
    return out;
  }

  friend bool operator==(const BellSet& a, const BellSet& b) { return a.d_ == b.d_ && a.labels_ == b.labels_; }
  friend bool operator<(const BellSet& a, const BellSet& b) {
    return std::tie(a.d_, a.labels_) < std::tie(b.d_, b.labels_);
  }

 private:
  int d_ = 3;
  std::vector<BellLabel> labels_;
};

/// All C(d^2, k) subsets in canonical (lexicographic by ordinal) order.
inline std::vector<BellSet> enumerate_sets(int k, int d) {
  require_dimension(d);
  const int n = d * d;
  if (k < 1 || k > n) throw std::domain_error("enumerate_sets: k outside [1, d^2]");
  if (n > 64) throw std::domain_error("enumerate_sets: d too large");
  std::vector<BellSet> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::vector<BellLabel> labels;
    labels.reserve(k);
    for (int i : idx) labels.push_back(BellLabel::from_ordinal(i, d));
    out.emplace_back(d, std::move(labels));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace lelm
