// Copyright 2026 The Subspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace subspace {

using Mask = std::uint64_t;

inline constexpr int kMaxPositions = 63;

/// A subset of positions {1..n}, stored as a bitmask with position 1 in the
/// lowest bit. Position p is also qubit p.
class Subset {
 public:
  Subset() = default;
  Subset(Mask mask, int n);

  static Subset from_positions(int n, std::span<const int> positions);
  static Subset from_positions(int n, std::initializer_list<int> positions);
  /// The first d positions, {1..d}.
  static Subset first(int n, int d);

  Mask mask() const noexcept { return mask_; }
  int n() const noexcept { return n_; }
  int weight() const noexcept { return std::popcount(mask_); }
  bool contains(int position) const noexcept {
    return position >= 1 && position <= n_ && ((mask_ >> (position - 1)) & 1U);
  }
  /// Sorted 1-based positions.
  std::vector<int> positions() const;
  /// "1,3,4"; empty set renders as "".
  std::string to_string() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  Mask mask_ = 0;
  int n_ = 0;
};

/// C(n,k) for 0 <= k <= n <= 63; 0 outside that range.
std::uint64_t binomial(int n, int k);

/// Colexicographic rank among weight-d subsets of {1..n}. Ascending mask
/// value order is exactly colex order.
std::size_t rank_subset(const Subset& s, int n, int d);
std::size_t rank_mask(Mask mask);
Subset unrank_subset(std::size_t rank, int n, int d);

/// Gosper's hack: next larger mask with the same popcount.
inline Mask next_same_weight(Mask m) {
  const Mask c = m & (~m + 1);
  const Mask r = m + c;
  return (((r ^ m) >> 2) / c) | r;
}

/// All weight-d masks over n positions in colex order.
std::vector<Mask> enumerate_masks(int n, int d);

/// Parity of set bits strictly between positions i < j (1-based).
inline int between_parity(Mask m, int i, int j) {
  if (j - i < 2) return 0;
  const Mask between = ((Mask{1} << (j - 1)) - 1) & ~((Mask{1} << i) - 1);
  return std::popcount(m & between) & 1;
}

/// Parity of set bits at positions strictly below p (1-based).
inline int below_parity(Mask m, int p) {
  return std::popcount(m & ((Mask{1} << (p - 1)) - 1)) & 1;
}

}  // namespace subspace
