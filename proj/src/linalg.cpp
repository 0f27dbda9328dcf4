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

#include "subspace/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "subspace/errors.hpp"

namespace subspace {

double orthonormality_error(const Matrix& x) {
  const Matrix g = x.transpose() * x - Matrix::Identity(x.cols(), x.cols());
  return g.cwiseAbs().maxCoeff();
}

OrthonormalFrame::OrthonormalFrame(Matrix x) : x_(std::move(x)) {
  if (x_.cols() < 1 || x_.rows() < x_.cols()) {
    throw InvalidArgument("frame must be n x d with n >= d >= 1, got " +
                          std::to_string(x_.rows()) + " x " + std::to_string(x_.cols()));
  }
  if (x_.rows() > kMaxPositions) {
    throw InvalidArgument("frame has more than 63 rows");
  }
  const double err = orthonormality_error(x_);
  if (!(err <= kFrameTolerance)) {
    throw InvalidArgument("columns are not orthonormal: ||X^T X - I||_max = " +
                          std::to_string(err));
  }
}

OrthonormalFrame OrthonormalFrame::identity(int n, int d) {
  return OrthonormalFrame(Matrix::Identity(n, d));
}

OrthonormalFrame orthogonalize(const Matrix& a) {
  const auto n = a.rows();
  const auto d = a.cols();
  if (d < 1 || n < d) {
    throw InvalidArgument("orthogonalize needs n >= d >= 1, got " + std::to_string(n) +
                          " x " + std::to_string(d));
  }
  if (!a.allFinite()) throw InvalidArgument("matrix has non-finite entries");
  const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
  const double smax = sv(0);
  const double smin = sv(d - 1);
  if (!(smax > 0.0) || smin <= 1e-10 * smax) {
    const auto rank = (sv.array() > 1e-10 * smax).count();
    throw DegenerateInput("matrix is rank deficient: numerical rank " + std::to_string(rank) +
                          " of " + std::to_string(d) + " columns");
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return OrthonormalFrame(std::move(q));
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  switch (m.rows()) {
    case 0:
      return 1.0;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return m.partialPivLu().determinant();
  }
}

Matrix select_rows(const Matrix& x, const Subset& s) {
  if (s.n() != x.rows()) {
    throw InvalidArgument("subset over " + std::to_string(s.n()) + " positions for a matrix with " +
                          std::to_string(x.rows()) + " rows");
  }
  Matrix out(s.weight(), x.cols());
  Eigen::Index r = 0;
  for (int p : s.positions()) out.row(r++) = x.row(p - 1);
  return out;
}

double subset_determinant(const Matrix& x, const Subset& s) {
  if (s.weight() != x.cols()) {
    throw InvalidArgument("subset weight " + std::to_string(s.weight()) +
                          " does not match column count " + std::to_string(x.cols()));
  }
  return determinant(select_rows(x, s));
}

double subset_determinant(const OrthonormalFrame& x, const Subset& s) {
  return subset_determinant(x.matrix(), s);
}

double cauchy_binet_sum(const OrthonormalFrame& x, const OrthonormalFrame& y) {
  if (x.n() != y.n() || x.d() != y.d()) {
    throw InvalidArgument("Cauchy-Binet needs frames of equal shape");
  }
  double sum = 0.0;
  for (Mask m : enumerate_masks(x.n(), x.d())) {
    const Subset s(m, x.n());
    sum += subset_determinant(x, s) * subset_determinant(y, s);
  }
  return sum;
}

void apply_givens_rows(Matrix& m, int i, int j, double theta) {
  if (i < 1 || j < 1 || i > m.rows() || j > m.rows() || i == j) {
    throw InvalidArgument("Givens rotation indices out of range");
  }
  if (i > j) {
    std::swap(i, j);
    theta = -theta;
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Vector ri = m.row(i - 1);
  const Vector rj = m.row(j - 1);
  m.row(i - 1) = c * ri - s * rj;
  m.row(j - 1) = s * ri + c * rj;
}

Matrix givens_matrix(int n, int i, int j, double theta) {
  Matrix g = Matrix::Identity(n, n);
  apply_givens_rows(g, i, j, theta);
  return g;
}

Vector AngleSequence::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(thetas.size()) + 1;
  Vector x(n);
  double tail = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    x(k) = std::cos(thetas[k]) * tail;
    tail *= std::sin(thetas[k]);
  }
  x(n - 1) = tail;
  return x;
}

AngleSequence spherical_angles(const Vector& x) {
  const auto n = x.size();
  if (n < 2) throw InvalidArgument("spherical angles need at least 2 components");
  const double norm = x.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InvalidArgument("spherical angles need a unit vector, norm is " + std::to_string(norm));
  }
  // suffix[k] = ||x_{k..n-1}||
  std::vector<double> suffix(n + 1, 0.0);
  for (Eigen::Index k = n - 1; k >= 0; --k) suffix[k] = std::hypot(suffix[k + 1], x(k));
  AngleSequence out;
  out.thetas.assign(n - 1, 0.0);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    if (suffix[k] == 0.0) break;
    out.thetas[k] = std::atan2(suffix[k + 1], x(k));
  }
  if (suffix[n - 2] != 0.0) {
    double last = std::atan2(x(n - 1), x(n - 2));
    if (last < 0) last += 2.0 * std::numbers::pi;
    out.thetas[n - 2] = last;
  }
  return out;
}

namespace {

void check_compound(const Matrix& a, int k) {
  const int mr = static_cast<int>(a.rows());
  const int mc = static_cast<int>(a.cols());
  if (k < 1 || k > std::min(mr, mc)) {
    throw InvalidArgument("compound order k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(std::min(mr, mc)) + "]");
  }
  if (mr > kMaxPositions || mc > kMaxPositions) {
    throw ResourceLimit("compound source larger than 63");
  }
  const auto cap = limits().compound_dim;
  if (binomial(mr, k) > cap || binomial(mc, k) > cap) {
    throw ResourceLimit("compound dimension exceeds the dense limit of " + std::to_string(cap));
  }
}

double minor_of(const Matrix& a, Mask rows, Mask cols, Matrix& scratch) {
  Eigen::Index r = 0;
  for (Mask rm = rows; rm != 0; rm &= rm - 1, ++r) {
    const int ri = std::countr_zero(rm);
    Eigen::Index c = 0;
    for (Mask cm = cols; cm != 0; cm &= cm - 1, ++c) scratch(r, c) = a(ri, std::countr_zero(cm));
  }
  return determinant(scratch);
}

}  // namespace

CompoundMatrix compound(const Matrix& a, int k) {
  check_compound(a, k);
  const auto row_masks = enumerate_masks(static_cast<int>(a.rows()), k);
  const auto col_masks = enumerate_masks(static_cast<int>(a.cols()), k);
  CompoundMatrix out{static_cast<int>(a.rows()), static_cast<int>(a.cols()), k,
                     Matrix(row_masks.size(), col_masks.size())};
  const auto nr = static_cast<std::ptrdiff_t>(row_masks.size());
#pragma omp parallel
  {
    Matrix scratch(k, k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < col_masks.size(); ++c)
        out.entries(r, c) = minor_of(a, row_masks[r], col_masks[c], scratch);
  }
  return out;
}

namespace serial {

CompoundMatrix compound(const Matrix& a, int k) {
  check_compound(a, k);
  const auto row_masks = enumerate_masks(static_cast<int>(a.rows()), k);
  const auto col_masks = enumerate_masks(static_cast<int>(a.cols()), k);
  CompoundMatrix out{static_cast<int>(a.rows()), static_cast<int>(a.cols()), k,
                     Matrix(row_masks.size(), col_masks.size())};
  Matrix scratch(k, k);
  for (std::size_t r = 0; r < row_masks.size(); ++r)
    for (std::size_t c = 0; c < col_masks.size(); ++c)
      out.entries(r, c) = minor_of(a, row_masks[r], col_masks[c], scratch);
  return out;
}

}  // namespace serial

}  // namespace subspace
