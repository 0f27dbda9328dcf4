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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "subspace/circuit.hpp"
#include "subspace/subset.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP version at namespace
// scope and a straightforward reference in `serial`; the tests hold them to
// bit-identical output and the benchmark target compares their speed.
namespace subspace::kernels {

/// Colex-ordered list of the weight-d masks over n positions.
struct SectorIndex {
  int n = 0;
  int d = 0;
  std::vector<Mask> masks;

  SectorIndex() = default;
  SectorIndex(int n, int d);
  std::size_t size() const noexcept { return masks.size(); }
};

/// In-place gate on a dense amplitude vector indexed by mask (qubit q is
/// bit q-1).
void apply_dense(std::span<double> amps, int n, const Gate& g);

/// Out-of-place weight-preserving gate on a sector vector. Throws
/// InvalidOperation for X and CX.
void apply_sector(std::span<const double> in, std::span<double> out, const SectorIndex& index,
                  const Gate& g);

/// Inverse-CDF sampling; shot s draws from CounterRng(seed, s).
std::vector<std::size_t> sample_indices(std::span<const double> cdf, std::size_t shots,
                                        std::uint64_t seed);

/// Running sums of squared amplitudes, normalised so the last entry is 1.
std::vector<double> squared_cdf(std::span<const double> amps);

namespace serial {
void apply_dense(std::span<double> amps, int n, const Gate& g);
void apply_sector(std::span<const double> in, std::span<double> out, const SectorIndex& index,
                  const Gate& g);
std::vector<std::size_t> sample_indices(std::span<const double> cdf, std::size_t shots,
                                        std::uint64_t seed);
}  // namespace serial

}  // namespace subspace::kernels
