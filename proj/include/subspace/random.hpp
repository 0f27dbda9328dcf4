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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace subspace {

/// Counter-based generator: the value drawn at (seed, stream, counter) is a
/// pure function of those three numbers. Shot i always uses stream i, so a
/// parallel loop produces the same samples as a serial one.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, one value per call).
  double normal();

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent child seed, e.g. one per test case.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

Eigen::MatrixXd random_gaussian(int rows, int cols, CounterRng& rng);
Eigen::VectorXd random_unit_vector(int n, CounterRng& rng);
/// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
Eigen::MatrixXd random_orthogonal(int n, CounterRng& rng);

}  // namespace subspace
