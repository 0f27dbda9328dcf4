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

#include "subspace/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subspace/errors.hpp"

namespace subspace {

namespace {

double l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_unit(double norm, const char* what) {
  if (!(std::abs(norm - 1.0) <= kStateNormTolerance)) {
    throw InvalidArgument(std::string(what) + " must have unit norm, got " + std::to_string(norm));
  }
}

std::shared_ptr<const kernels::SectorIndex> make_index(int n, int d) {
  if (n < 1 || n > kMaxPositions || d < 0 || d > n) {
    throw InvalidArgument("sector needs 0 <= d <= n <= 63");
  }
  return std::make_shared<const kernels::SectorIndex>(n, d);
}

}  // namespace

StateVector::StateVector(int n, std::vector<double> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > limits().dense_qubits) {
    throw ResourceLimit("dense state needs 1 <= n <= " + std::to_string(limits().dense_qubits));
  }
  if (amps_.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("dense state needs 2^n amplitudes");
  }
  check_unit(norm(), "state vector");
}

StateVector StateVector::basis(int n, Mask mask) {
  if (n < 1 || n > limits().dense_qubits) {
    throw ResourceLimit("dense state needs 1 <= n <= " + std::to_string(limits().dense_qubits));
  }
  if ((mask >> n) != 0) throw InvalidArgument("basis mask outside n qubits");
  StateVector s;
  s.n_ = n;
  s.amps_.assign(std::size_t{1} << n, 0.0);
  s.amps_[mask] = 1.0;
  return s;
}

double StateVector::norm() const { return l2(amps_); }

double StateVector::weight_leakage(int d) const {
  double leak = 0.0;
  for (std::size_t m = 0; m < amps_.size(); ++m)
    if (std::popcount(static_cast<Mask>(m)) != d) leak += amps_[m] * amps_[m];
  return leak;
}

void StateVector::apply(const Gate& g) {
  if (std::max(g.q0, g.q1) > n_) throw InvalidArgument("gate acts outside the state's qubits");
  kernels::apply_dense(amps_, n_, g);
}

void StateVector::apply(const Circuit& c) {
  if (c.n() > n_) throw InvalidArgument("circuit has more qubits than the state");
  for (const Gate& g : c.gates()) kernels::apply_dense(amps_, n_, g);
}

SectorState::SectorState(int n, int d, std::vector<double> amplitudes)
    : SectorState(make_index(n, d), std::move(amplitudes), true) {}

SectorState::SectorState(std::shared_ptr<const kernels::SectorIndex> index, std::vector<double> amps,
                         bool check_norm)
    : index_(std::move(index)), amps_(std::move(amps)) {
  if (amps_.size() != index_->size()) {
    throw InvalidArgument("sector state needs C(n,d) = " + std::to_string(index_->size()) +
                          " amplitudes, got " + std::to_string(amps_.size()));
  }
  if (check_norm) check_unit(norm(), "sector state");
}

SectorState SectorState::basis(const Subset& s) {
  auto index = make_index(s.n(), s.weight());
  std::vector<double> amps(index->size(), 0.0);
  amps[rank_mask(s.mask())] = 1.0;
  return SectorState(std::move(index), std::move(amps), false);
}

double SectorState::amplitude(const Subset& s) const {
  return amps_.at(rank_subset(s, n(), d()));
}

double SectorState::norm() const { return l2(amps_); }

SectorState SectorState::with_amplitudes(std::vector<double> amplitudes) const {
  return SectorState(index_, std::move(amplitudes), true);
}

SectorState apply_gate_sector(const SectorState& st, const Gate& g) {
  std::vector<double> out(st.size());
  kernels::apply_sector(st.amplitudes(), out, st.index(), g);
  return st.with_amplitudes(std::move(out));
}

namespace serial {
SectorState apply_gate_sector(const SectorState& st, const Gate& g) {
  std::vector<double> out(st.size());
  kernels::serial::apply_sector(st.amplitudes(), out, st.index(), g);
  return st.with_amplitudes(std::move(out));
}
}  // namespace serial

SectorState simulate_sector(const Circuit& c, const SectorState& st) {
  if (c.n() > st.n()) throw InvalidArgument("circuit has more qubits than the state");
  std::vector<double> a = st.amplitudes();
  std::vector<double> b(a.size());
  for (const Gate& g : c.gates()) {
    kernels::apply_sector(a, b, st.index(), g);
    a.swap(b);
  }
  return st.with_amplitudes(std::move(a));
}

Matrix circuit_unitary(const Circuit& c) {
  const int n = c.n();
  if (n > limits().unitary_qubits) {
    throw ResourceLimit("dense unitary limited to " + std::to_string(limits().unitary_qubits) +
                        " qubits, circuit has " + std::to_string(n));
  }
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Matrix u = Matrix::Identity(dim, dim);
  // Columns are contiguous in Eigen's column-major layout.
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::span<double> v(u.col(col).data(), static_cast<std::size_t>(dim));
    for (const Gate& g : c.gates()) kernels::serial::apply_dense(v, n, g);
  }
  return u;
}

StateVector embed(const SectorState& st) {
  std::vector<double> amps(std::size_t{1} << st.n(), 0.0);
  const auto& masks = st.index().masks;
  for (std::size_t k = 0; k < masks.size(); ++k) amps[masks[k]] = st.amplitudes()[k];
  return StateVector(st.n(), std::move(amps));
}

SectorState restrict_to_sector(const StateVector& sv, int d, double tolerance) {
  const double leak = sv.weight_leakage(d);
  if (leak > tolerance) {
    throw InvalidArgument("state has squared norm " + std::to_string(leak) +
                          " outside the weight-" + std::to_string(d) + " sector");
  }
  const auto masks = enumerate_masks(sv.n(), d);
  std::vector<double> amps(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) amps[k] = sv.amplitudes()[masks[k]];
  const double nrm = l2(amps);
  for (double& a : amps) a /= nrm;
  return SectorState(sv.n(), d, std::move(amps));
}

SectorState prepare_subspace_state_reference(const OrthonormalFrame& x) {
  const int n = x.n();
  const int d = x.d();
  const auto masks = enumerate_masks(n, d);
  std::vector<double> amps(masks.size());
  const auto size = static_cast<std::ptrdiff_t>(masks.size());
#pragma omp parallel for if (size >= 4096) schedule(static)
  for (std::ptrdiff_t k = 0; k < size; ++k) amps[k] = subset_determinant(x, Subset(masks[k], n));
  return SectorState(n, d, std::move(amps));
}

double overlap(const SectorState& a, const SectorState& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw InvalidArgument("overlap of different sectors");
  return std::inner_product(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin(),
                            0.0);
}

double distance_up_to_sign(const SectorState& a, const SectorState& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw InvalidArgument("distance between different sectors");
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a.amplitudes()[k];
    const double y = b.amplitudes()[k];
    plus += (x - y) * (x - y);
    minus += (x + y) * (x + y);
  }
  return std::sqrt(std::min(plus, minus));
}

namespace {

std::vector<Subset> to_subsets(const std::vector<std::size_t>& idx, std::span<const Mask> masks,
                               int n) {
  std::vector<Subset> out;
  out.reserve(idx.size());
  for (std::size_t k : idx) out.emplace_back(masks.empty() ? static_cast<Mask>(k) : masks[k], n);
  return out;
}

}  // namespace

std::vector<Subset> measure_samples(const SectorState& st, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  const auto cdf = kernels::squared_cdf(st.amplitudes());
  return to_subsets(kernels::sample_indices(cdf, shots, seed), st.index().masks, st.n());
}

std::vector<Subset> measure_samples(const StateVector& sv, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  const auto cdf = kernels::squared_cdf(sv.amplitudes());
  return to_subsets(kernels::sample_indices(cdf, shots, seed), {}, sv.n());
}

double check_plucker(const SectorState& st) {
  const int n = st.n();
  const int d = st.d();
  if (d < 2) throw InvalidArgument("Plucker relations need d >= 2");
  if (d + 1 > n) return 0.0;
  const auto lows = enumerate_masks(n, d - 1);
  const auto highs = enumerate_masks(n, d + 1);
  const double work = static_cast<double>(lows.size()) * static_cast<double>(highs.size());
  if (work > 5e8) throw ResourceLimit("too many Plucker relations to evaluate");
  const auto& amps = st.amplitudes();
  double worst = 0.0;
  const auto nl = static_cast<std::ptrdiff_t>(lows.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 16)
  for (std::ptrdiff_t a = 0; a < nl; ++a) {
    const Mask low = lows[a];
    for (Mask high : highs) {
      double sum = 0.0;
      int k = 0;
      for (Mask h = high; h != 0; h &= h - 1) {
        ++k;
        const Mask jk = h & (~h + 1);
        if (low & jk) continue;
        // j_k appended after I, then sorted into place.
        const int above = std::popcount(low & ~((jk << 1) - 1));
        const double left = amps[rank_mask(low | jk)] * ((above & 1) ? -1.0 : 1.0);
        const double right = amps[rank_mask(high & ~jk)];
        sum += ((k & 1) ? -1.0 : 1.0) * left * right;
      }
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

double apply_givens_theorem_check(const OrthonormalFrame& x, int i, int j, double theta) {
  const SectorState before = prepare_subspace_state_reference(x);
  const SectorState after = apply_gate_sector(before, Gate::fbs(i, j, theta));
  Matrix rotated = x.matrix();
  apply_givens_rows(rotated, i, j, theta);
  const SectorState expected = prepare_subspace_state_reference(OrthonormalFrame(rotated));
  double s = 0.0;
  for (std::size_t k = 0; k < after.size(); ++k) {
    const double diff = after.amplitudes()[k] - expected.amplitudes()[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace subspace
