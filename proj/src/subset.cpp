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

#include "subspace/subset.hpp"

#include <array>
#include <string>

#include "subspace/errors.hpp"

namespace subspace {

namespace {

using PascalTable = std::array<std::array<std::uint64_t, 64>, 64>;

const PascalTable& pascal() {
  static const PascalTable table = [] {
    PascalTable t{};
    for (int n = 0; n < 64; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

void check_n(int n) {
  if (n < 1 || n > kMaxPositions) {
    throw InvalidArgument("subset size n must lie in [1, 63], got " + std::to_string(n));
  }
}

}  // namespace

Subset::Subset(Mask mask, int n) : mask_(mask), n_(n) {
  check_n(n);
  if (n < 64 && (mask >> n) != 0) {
    throw InvalidArgument("mask has bits set above position " + std::to_string(n));
  }
}

Subset Subset::from_positions(int n, std::span<const int> positions) {
  check_n(n);
  Mask m = 0;
  for (int p : positions) {
    if (p < 1 || p > n) {
      throw InvalidArgument("position " + std::to_string(p) + " outside [1, " +
                            std::to_string(n) + "]");
    }
    m |= Mask{1} << (p - 1);
  }
  return Subset(m, n);
}

Subset Subset::from_positions(int n, std::initializer_list<int> positions) {
  return from_positions(n, std::span<const int>(positions.begin(), positions.size()));
}

Subset Subset::first(int n, int d) {
  check_n(n);
  if (d < 0 || d > n) throw InvalidArgument("weight outside [0, n]");
  return Subset(d == 0 ? 0 : (Mask{1} << d) - 1, n);
}

std::vector<int> Subset::positions() const {
  std::vector<int> out;
  out.reserve(weight());
  for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Subset::to_string() const {
  std::string s;
  for (int p : positions()) {
    if (!s.empty()) s += ',';
    s += std::to_string(p);
  }
  return s;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kMaxPositions) return 0;
  return pascal()[n][k];
}

std::size_t rank_mask(Mask mask) {
  std::size_t r = 0;
  int i = 1;
  for (Mask m = mask; m != 0; m &= m - 1, ++i) {
    r += pascal()[std::countr_zero(m)][i];
  }
  return r;
}

std::size_t rank_subset(const Subset& s, int n, int d) {
  if (s.n() != n) {
    throw InvalidArgument("subset is over " + std::to_string(s.n()) +
                          " positions, expected " + std::to_string(n));
  }
  if (s.weight() != d) {
    throw InvalidArgument("subset weight " + std::to_string(s.weight()) +
                          " does not match d = " + std::to_string(d));
  }
  return rank_mask(s.mask());
}

Subset unrank_subset(std::size_t rank, int n, int d) {
  check_n(n);
  if (d < 0 || d > n) throw InvalidArgument("weight outside [0, n]");
  if (rank >= binomial(n, d)) {
    throw InvalidArgument("rank " + std::to_string(rank) + " out of range for C(" +
                          std::to_string(n) + "," + std::to_string(d) + ")");
  }
  Mask m = 0;
  int c = n - 1;
  for (int i = d; i >= 1; --i) {
    while (pascal()[c][i] > rank) --c;
    rank -= pascal()[c][i];
    m |= Mask{1} << c;
    --c;
  }
  return Subset(m, n);
}

std::vector<Mask> enumerate_masks(int n, int d) {
  check_n(n);
  if (d < 0 || d > n) throw InvalidArgument("weight outside [0, n]");
  std::vector<Mask> out;
  out.reserve(binomial(n, d));
  if (d == 0) {
    out.push_back(0);
    return out;
  }
  const Mask last = ((Mask{1} << d) - 1) << (n - d);
  for (Mask m = (Mask{1} << d) - 1;; m = next_same_weight(m)) {
    out.push_back(m);
    if (m == last) break;
  }
  return out;
}

}  // namespace subspace
