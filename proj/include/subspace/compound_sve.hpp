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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "subspace/circuit.hpp"
#include "subspace/linalg.hpp"
#include "subspace/subset.hpp"

namespace subspace {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Action of a weight-preserving circuit on the weight-k sector, columns
/// indexed by colex rank.
struct SectorUnitary {
  int n = 0;
  int k = 0;
  Matrix matrix;
};

/// Throws InvalidOperation for X/CX and ResourceLimit past
/// limits().compound_dim.
SectorUnitary sector_unitary_from_circuit(const Circuit& c, int k);

/// Orthonormal complex eigenbasis of a real orthogonal matrix, read off its
/// real Schur form. phases are in [0, 2pi).
struct UnitaryEigensystem {
  ComplexMatrix vectors;
  Vector phases;
};
UnitaryEigensystem orthogonal_eigensystem(const Matrix& u);

/// Max over |S| = k of || U^k |Col(V_S)> - e^{i sum_S theta} |Col(V_S)> ||
/// with complex minors. n <= 8.
double compound_spectrum_check(const Matrix& u, int k);

/// cos(theta_S) = prod_{i in S} sigma_i for A = (P^T Q)_{IJ}.
struct PrincipalAngles {
  std::vector<double> sigma;
  /// S indexes singular values (descending), weight k.
  std::vector<Subset> subsets;
  std::vector<double> cosines;
  /// Against singular values of (P^k restricted to I_k)^T (Q^k restricted
  /// to J_k), compared as sorted lists.
  double cross_check_residual = 0.0;
};

PrincipalAngles principal_angles_oracle(const Matrix& p, const Matrix& q, const Subset& rows,
                                        const Subset& cols, int k);

/// [[A, (I - AA^T)^{1/2}], [-(I - A^T A)^{1/2}, A^T]] for square A with
/// ||A|| <= 1.
Matrix block_embedding(const Matrix& a);

/// Outcome distribution of t-bit phase estimation on eigen-decomposed
/// `u` with input psi: P(m) = sum_j w_j F(phi_j - 2 pi m / 2^t), F the
/// Fejer kernel.
std::vector<double> phase_distribution(const UnitaryEigensystem& eig, const ComplexVector& psi,
                                       int bits);

/// Phase estimation on the sector matrix itself.
std::vector<double> sector_phase_estimation(const Matrix& u, const ComplexVector& psi, int bits);

/// The singular value problem for the top-left `block` x `block` corner A of
/// an orthogonal u (P = identity, I = J = {1..block}).
class SveProblem {
 public:
  SveProblem(Matrix u, int block, int k);

  int n() const noexcept { return static_cast<int>(u_.rows()); }
  int block() const noexcept { return block_; }
  int k() const noexcept { return k_; }
  const Vector& sigma() const noexcept { return sigma_; }
  /// (2 Pi_P - I)(2 Pi_Q - I) on the weight-k sector, Pi_Q = U^k Pi_J U^kT.
  const Matrix& walk() const noexcept { return walk_; }
  const UnitaryEigensystem& eigensystem() const noexcept { return eig_; }

  /// U^k |Col(V_S)> with V_S the right singular vectors listed by S,
  /// placed in the first `block` rows.
  Vector input_state(const Subset& s) const;
  double product_sigma(const Subset& s) const;

 private:
  Matrix u_;
  int block_;
  int k_;
  Vector sigma_;
  Matrix right_;
  Matrix compound_;
  Matrix walk_;
  UnitaryEigensystem eig_;
};

struct PhaseEstimate {
  Subset s;
  /// Measured register value m and phase 2 pi m / 2^t.
  int outcome = 0;
  double phase = 0.0;
  /// Folded angle min(phase, 2pi - phase) / 2.
  double theta = 0.0;
  int bits = 0;
};

struct SvePeak {
  Subset s;
  int outcome = 0;
  double probability = 0.0;
};

struct SveResult {
  int bits = 0;
  std::vector<PhaseEstimate> estimates;
  /// Joint (S, m) probabilities above 1e-12.
  std::vector<SvePeak> peaks;
};

/// Input sum_S alpha_S U^k|Col(V_S)> (alphas normalised here). Shot s draws
/// S then m from CounterRng(seed, s).
SveResult subspace_sve(const SveProblem& problem, const std::vector<Subset>& subsets,
                       const std::vector<double>& alphas, int bits, std::size_t shots,
                       std::uint64_t seed);

}  // namespace subspace
