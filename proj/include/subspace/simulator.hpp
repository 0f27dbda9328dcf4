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
#include <memory>
#include <span>
#include <vector>

#include "subspace/circuit.hpp"
#include "subspace/kernels.hpp"
#include "subspace/linalg.hpp"
#include "subspace/subset.hpp"

namespace subspace {

inline constexpr double kStateNormTolerance = 1e-9;

/// Dense real state over all 2^n basis states, indexed by mask.
class StateVector {
 public:
  /// Validates the length (2^n) and unit norm.
  StateVector(int n, std::vector<double> amplitudes);
  static StateVector basis(int n, Mask mask);

  int n() const noexcept { return n_; }
  const std::vector<double>& amplitudes() const noexcept { return amps_; }
  double amplitude(Mask m) const { return amps_.at(m); }
  double norm() const;

  /// Squared norm carried by basis states of weight != d.
  double weight_leakage(int d) const;

  void apply(const Gate& g);
  void apply(const Circuit& c);

 private:
  StateVector() = default;
  int n_ = 0;
  std::vector<double> amps_;
};

/// Real state supported on the weight-d sector, indexed by colex rank.
class SectorState {
 public:
  SectorState(int n, int d, std::vector<double> amplitudes);
  static SectorState basis(const Subset& s);

  int n() const noexcept { return index_->n; }
  int d() const noexcept { return index_->d; }
  std::size_t size() const noexcept { return amps_.size(); }
  const std::vector<double>& amplitudes() const noexcept { return amps_; }
  double amplitude(const Subset& s) const;
  const kernels::SectorIndex& index() const noexcept { return *index_; }
  double norm() const;

  /// Same sector, new amplitudes (shares the index).
  SectorState with_amplitudes(std::vector<double> amplitudes) const;

 private:
  SectorState(std::shared_ptr<const kernels::SectorIndex> index, std::vector<double> amps,
              bool check_norm);
  std::shared_ptr<const kernels::SectorIndex> index_;
  std::vector<double> amps_;
};

SectorState apply_gate_sector(const SectorState& st, const Gate& g);
SectorState simulate_sector(const Circuit& c, const SectorState& st);

namespace serial {
SectorState apply_gate_sector(const SectorState& st, const Gate& g);
}  // namespace serial

/// Dense 2^n x 2^n matrix of the circuit; column m is the image of |m>.
Matrix circuit_unitary(const Circuit& c);

StateVector embed(const SectorState& st);
/// Projects onto the weight-d sector. Throws InvalidArgument if more than
/// `tolerance` squared norm lies outside it.
SectorState restrict_to_sector(const StateVector& sv, int d, double tolerance = 1e-18);

/// |Col(X)> by definition: amplitude det(X_S) at every weight-d subset.
SectorState prepare_subspace_state_reference(const OrthonormalFrame& x);

/// <a|b> for two states in the same sector.
double overlap(const SectorState& a, const SectorState& b);
/// min over sign s of ||a - s b||.
double distance_up_to_sign(const SectorState& a, const SectorState& b);

std::vector<Subset> measure_samples(const SectorState& st, std::size_t shots, std::uint64_t seed);
std::vector<Subset> measure_samples(const StateVector& sv, std::size_t shots, std::uint64_t seed);

/// Largest |residual| of the quadratic Grassmann-Plucker relations
///   sum_k (-1)^k p(I + j_k) p(J - j_k),  |I| = d-1, |J| = d+1,
/// with p extended to unsorted index lists as an alternating function.
/// Zero (to rounding) exactly on subspace states.
double check_plucker(const SectorState& st);

/// || FBS_ij(theta)|Col(X)> - |Col(G(i,j,theta) X)> ||.
double apply_givens_theorem_check(const OrthonormalFrame& x, int i, int j, double theta);

}  // namespace subspace
