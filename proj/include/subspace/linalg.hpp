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
#include <vector>

#include <Eigen/Dense>

#include "subspace/subset.hpp"

namespace subspace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kFrameTolerance = 1e-10;

/// n x d real matrix with orthonormal columns. The class only exists in a
/// validated state: construction checks ||X^T X - I||_max <= 1e-10.
class OrthonormalFrame {
 public:
  explicit OrthonormalFrame(Matrix x);

  /// I_{n,d}: the first d columns of the identity.
  static OrthonormalFrame identity(int n, int d);

  int n() const noexcept { return static_cast<int>(x_.rows()); }
  int d() const noexcept { return static_cast<int>(x_.cols()); }
  const Matrix& matrix() const noexcept { return x_; }

 private:
  Matrix x_;
};

/// max_{ij} |X^T X - I|.
double orthonormality_error(const Matrix& x);

/// Householder QR with the diagonal of R made nonnegative. Throws
/// DegenerateInput when the smallest singular value falls below 1e-10 times
/// the largest.
OrthonormalFrame orthogonalize(const Matrix& a);

/// Closed forms for size <= 3, partial-pivot LU beyond.
double determinant(const Matrix& m);

/// Rows of `x` listed by `s`, in ascending position order.
Matrix select_rows(const Matrix& x, const Subset& s);

/// det(X_S) where |S| must equal the column count.
double subset_determinant(const Matrix& x, const Subset& s);
double subset_determinant(const OrthonormalFrame& x, const Subset& s);

/// Sum over |S| = d of det(X_S) det(Y_S).
double cauchy_binet_sum(const OrthonormalFrame& x, const OrthonormalFrame& y);

/// G(i, j, theta) for 1-based i < j: rows i and j become
///   row_i' = cos * row_i - sin * row_j
///   row_j' = sin * row_i + cos * row_j.
/// This is the rotation an RBS/FBS gate on qubits (i, j) applies to a
/// subspace state.
Matrix givens_matrix(int n, int i, int j, double theta);
/// Applies G(i, j, theta) to the rows of `m` in place.
void apply_givens_rows(Matrix& m, int i, int j, double theta);

/// Spherical coordinates of a unit vector: x_1 = cos t_1,
/// x_k = cos t_k * prod_{l<k} sin t_l, x_n = sin t_{n-1} * prod_{l<n-1} sin t_l.
struct AngleSequence {
  std::vector<double> thetas;

  Vector reconstruct() const;
};

AngleSequence spherical_angles(const Vector& x);

/// Matrix of k x k minors indexed by colex-ranked weight-k subsets. Entry
/// (I, J) is det(A_{IJ}). Rectangular sources are allowed.
struct CompoundMatrix {
  int source_rows = 0;
  int source_cols = 0;
  int k = 0;
  Matrix entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Parallel over rows of the result. Throws ResourceLimit when either side
/// exceeds limits().compound_dim.
CompoundMatrix compound(const Matrix& a, int k);

namespace serial {
CompoundMatrix compound(const Matrix& a, int k);
}  // namespace serial

}  // namespace subspace
