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

#include "subspace/givens.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subspace/errors.hpp"

namespace subspace {

namespace {

constexpr double kOrthogonalTolerance = 1e-9;

bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

void require_orthogonal(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("expected a square matrix");
  if (orthonormality_error(u) > kOrthogonalTolerance) {
    throw InvalidArgument("matrix is not orthogonal to 1e-9");
  }
}

// Moves a sign diagonal from the left of a rotation to its right.
Rotation conjugate(const Rotation& r, const std::vector<int>& signs) {
  Rotation out = r;
  if (signs[r.i - 1] != signs[r.j - 1]) out.theta = -out.theta;
  return out;
}

// Decomposition of b * a, where a is applied first.
GivensDecomposition then(const GivensDecomposition& a, const GivensDecomposition& b) {
  GivensDecomposition out;
  out.n = a.n;
  out.rotations.reserve(a.rotations.size() + b.rotations.size());
  for (const Rotation& r : a.rotations) out.rotations.push_back(conjugate(r, b.signs));
  out.rotations.insert(out.rotations.end(), b.rotations.begin(), b.rotations.end());
  out.signs.resize(a.signs.size());
  for (std::size_t k = 0; k < a.signs.size(); ++k) out.signs[k] = a.signs[k] * b.signs[k];
  return out;
}

// Two decompositions acting on disjoint halves of 2m coordinates.
GivensDecomposition direct_sum(const GivensDecomposition& top, const GivensDecomposition& bottom) {
  GivensDecomposition out;
  out.n = top.n + bottom.n;
  out.rotations = top.rotations;
  for (Rotation r : bottom.rotations) {
    r.i += top.n;
    r.j += top.n;
    out.rotations.push_back(r);
  }
  out.signs = top.signs;
  out.signs.insert(out.signs.end(), bottom.signs.begin(), bottom.signs.end());
  return out;
}

GivensDecomposition csd_recursive(const Matrix& u) {
  const auto n = static_cast<int>(u.rows());
  if (n == 1) return {1, {}, {u(0, 0) < 0.0 ? -1 : 1}};
  const int m = n / 2;
  const CosineSine cs = cosine_sine(u);
  GivensDecomposition middle{n, {}, std::vector<int>(n, 1)};
  for (int i = 0; i < m; ++i) {
    middle.rotations.push_back({i + 1, i + 1 + m, std::atan2(cs.s(i), cs.c(i))});
  }
  const auto right = direct_sum(csd_recursive(cs.r0), csd_recursive(cs.r1));
  const auto left = direct_sum(csd_recursive(cs.l0), csd_recursive(cs.l1));
  return then(then(right, middle), left);
}

}  // namespace

Matrix GivensDecomposition::reconstruct() const {
  Matrix m = Matrix::Identity(n, d());
  for (int c = 0; c < d(); ++c) m.col(c) *= signs[c];
  for (const Rotation& r : rotations) apply_givens_rows(m, r.i, r.j, r.theta);
  return m;
}

Circuit GivensDecomposition::to_circuit() const {
  Circuit c(n, "givens");
  for (const Rotation& r : rotations) {
    c.add(std::abs(r.i - r.j) == 1 ? Gate::rbs(r.i, r.j, r.theta) : Gate::fbs(r.i, r.j, r.theta));
  }
  return c;
}

GivensDecomposition pyramid_decompose(const OrthonormalFrame& u) {
  const int n = u.n();
  const int d = u.d();
  Matrix m = u.matrix();
  std::vector<Rotation> reduction;
  reduction.reserve(static_cast<std::size_t>(n * d));
  for (int c = 0; c < d; ++c) {
    for (int r = n - 1; r > c; --r) {
      const double a = m(r - 1, c);
      const double b = m(r, c);
      // Both entries zero: any angle works.
      const double theta = (a == 0.0 && b == 0.0) ? 0.0 : std::atan2(-b, a);
      apply_givens_rows(m, r, r + 1, theta);
      reduction.push_back({r, r + 1, theta});
    }
  }
  GivensDecomposition out;
  out.n = n;
  out.signs.resize(d);
  for (int c = 0; c < d; ++c) out.signs[c] = m(c, c) < 0.0 ? -1 : 1;
  out.rotations.reserve(reduction.size());
  for (auto it = reduction.rbegin(); it != reduction.rend(); ++it) {
    if (it->theta == 0.0) continue;
    out.rotations.push_back({it->i, it->j, -it->theta});
  }
  return out;
}

CosineSine cosine_sine(const Matrix& u) {
  require_orthogonal(u);
  if (u.rows() % 2 != 0) throw InvalidArgument("cosine-sine split needs an even size");
  const Eigen::Index m = u.rows() / 2;
  const Matrix u00 = u.topLeftCorner(m, m);
  const Matrix u01 = u.topRightCorner(m, m);
  const Matrix u10 = u.bottomLeftCorner(m, m);
  const Matrix u11 = u.bottomRightCorner(m, m);

  Eigen::JacobiSVD<Matrix> svd(u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CosineSine out;
  // Ascending cosines put the vanishing sines last, which the QR below
  // relies on.
  // A stable sort keeps tied singular values in place, so the identity
  // factors into identities.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Vector& sv = svd.singularValues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return sv(a) < sv(b); });
  out.c.resize(m);
  out.l0.resize(m, m);
  out.r0.resize(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    out.c(k) = sv(order[k]);
    out.l0.col(k) = svd.matrixU().col(order[k]);
    out.r0.row(k) = svd.matrixV().col(order[k]).transpose();
  }

  const Matrix b = u10 * out.r0.transpose();
  Eigen::HouseholderQR<Matrix> qr(b);
  out.l1 = qr.householderQ() * Matrix::Identity(m, m);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  out.s = r.diagonal();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (out.s(i) < 0.0) {
      out.s(i) = -out.s(i);
      out.l1.col(i) *= -1.0;
    }
  }

  const Matrix from_top = out.l0.transpose() * u01;
  const Matrix from_bottom = out.l1.transpose() * u11;
  out.r1.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (out.s(i) > out.c(i)) {
      out.r1.row(i) = -from_top.row(i) / out.s(i);
    } else {
      out.r1.row(i) = from_bottom.row(i) / out.c(i);
    }
  }
  return out;
}

GivensDecomposition sine_cosine_decompose(const Matrix& u) {
  require_orthogonal(u);
  if (!is_power_of_two(u.rows())) {
    throw InvalidArgument("sine-cosine decomposition needs n a power of 2, got " +
                          std::to_string(u.rows()));
  }
  if (u.rows() > kMaxPositions) throw InvalidArgument("at most 63 qubits");
  return csd_recursive(u);
}

Matrix complete_to_orthogonal(const OrthonormalFrame& x) {
  const int n = x.n();
  const int d = x.d();
  Eigen::HouseholderQR<Matrix> qr(x.matrix());
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  q.leftCols(d) = x.matrix();
  return q;
}

GivensMethod parse_givens_method(std::string_view name) {
  if (name == "pyramid") return GivensMethod::kPyramid;
  if (name == "csd" || name == "sine-cosine") return GivensMethod::kSineCosine;
  throw InvalidArgument("unknown decomposition method '" + std::string(name) + "'");
}

GivensDecomposition decompose(const Matrix& u, GivensMethod method) {
  if (method == GivensMethod::kPyramid) {
    require_orthogonal(u);
    return pyramid_decompose(OrthonormalFrame(u));
  }
  const Matrix full = u.cols() < u.rows() ? complete_to_orthogonal(OrthonormalFrame(u)) : u;
  require_orthogonal(full);
  const Eigen::Index n = full.rows();
  Eigen::Index p = 1;
  while (p < n) p *= 2;
  if (p == n) return sine_cosine_decompose(full);
  if (p > kMaxPositions) throw InvalidArgument("at most 63 qubits");
  Matrix padded = Matrix::Identity(p, p);
  padded.topLeftCorner(n, n) = full;
  return sine_cosine_decompose(padded);
}

SectorState prepare_via_givens(const GivensDecomposition& dec, const Subset& s) {
  if (dec.d() != dec.n) throw InvalidArgument("state preparation needs a full orthogonal decomposition");
  if (s.n() > dec.n) throw InvalidArgument("subset size exceeds the decomposition");
  const SectorState out = simulate_sector(dec.to_circuit(), SectorState::basis(Subset(s.mask(), dec.n)));
  int sign = 1;
  for (int p : s.positions()) sign *= dec.signs[p - 1];
  if (s.n() == dec.n) {
    if (sign == 1) return out;
    std::vector<double> amps = out.amplitudes();
    for (double& a : amps) a = -a;
    return out.with_amplitudes(std::move(amps));
  }
  // Padded decomposition: the padding rows of U_S are zero, so all mass
  // sits on masks inside the first s.n() qubits.
  const auto masks = enumerate_masks(s.n(), s.weight());
  std::vector<double> amps(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) amps[k] = sign * out.amplitudes()[rank_mask(masks[k])];
  return SectorState(s.n(), s.weight(), std::move(amps));
}

SectorState prepare_via_givens(const Matrix& u, const Subset& s, GivensMethod method) {
  return prepare_via_givens(decompose(u, method), s);
}

nlohmann::ordered_json to_json(const GivensDecomposition& dec) {
  nlohmann::ordered_json j;
  j["n"] = dec.n;
  auto rots = nlohmann::ordered_json::array();
  for (const Rotation& r : dec.rotations) rots.push_back({r.i, r.j, r.theta});
  j["rotations"] = std::move(rots);
  j["signs"] = dec.signs;
  return j;
}

GivensDecomposition decomposition_from_json(const nlohmann::json& j) {
  try {
    GivensDecomposition dec;
    dec.n = j.at("n").get<int>();
    if (dec.n < 1 || dec.n > kMaxPositions) throw InvalidArgument("n out of range");
    for (const auto& r : j.at("rotations")) {
      Rotation rot{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<double>()};
      if (rot.i < 1 || rot.j < 1 || rot.i > dec.n || rot.j > dec.n || rot.i == rot.j) {
        throw InvalidArgument("rotation indices out of range");
      }
      dec.rotations.push_back(rot);
    }
    dec.signs = j.at("signs").get<std::vector<int>>();
    if (dec.signs.empty() || dec.d() > dec.n) throw InvalidArgument("bad sign vector length");
    for (int s : dec.signs) {
      if (s != 1 && s != -1) throw InvalidArgument("signs must be +1 or -1");
    }
    return dec;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed decomposition JSON: ") + e.what());
  }
}

}  // namespace subspace
