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

#include "subspace/compound_sve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "subspace/errors.hpp"
#include "subspace/kernels.hpp"
#include "subspace/random.hpp"
#include "subspace/simulator.hpp"

namespace subspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_orthogonal(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("expected a square matrix");
  if (orthonormality_error(u) > 1e-9) throw InvalidArgument("matrix is not orthogonal to 1e-9");
}

double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0.0 ? phi + kTwoPi : phi;
}

// |(1/T) sum_x e^{i x delta}|^2.
double fejer(double delta, int size) {
  const double half = std::sin(delta / 2.0);
  if (std::abs(half) < 1e-15) return 1.0;
  const double top = std::sin(size * delta / 2.0);
  return (top * top) / (static_cast<double>(size) * size * half * half);
}

std::size_t draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> running_sum(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) c[k] = acc += p[k];
  return c;
}

}  // namespace

SectorUnitary sector_unitary_from_circuit(const Circuit& c, int k) {
  const int n = c.n();
  if (k < 0 || k > n) throw InvalidArgument("sector weight outside [0, n]");
  for (const Gate& g : c.gates()) {
    if (!g.weight_preserving()) {
      throw InvalidOperation(std::string("gate ") + std::string(gate_name(g.kind)) +
                             " changes the Hamming weight");
    }
  }
  if (binomial(n, k) > limits().compound_dim) {
    throw ResourceLimit("sector dimension exceeds the dense limit of " +
                        std::to_string(limits().compound_dim));
  }
  const kernels::SectorIndex index(n, k);
  const auto dim = static_cast<std::ptrdiff_t>(index.size());
  SectorUnitary out{n, k, Matrix(dim, dim)};
#pragma omp parallel
  {
    std::vector<double> a(index.size()), b(index.size());
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t col = 0; col < dim; ++col) {
      std::fill(a.begin(), a.end(), 0.0);
      a[col] = 1.0;
      for (const Gate& g : c.gates()) {
        kernels::apply_sector(a, b, index, g);
        a.swap(b);
      }
      for (std::ptrdiff_t r = 0; r < dim; ++r) out.matrix(r, col) = a[r];
    }
  }
  return out;
}

UnitaryEigensystem orthogonal_eigensystem(const Matrix& u) {
  require_orthogonal(u);
  const auto n = u.rows();
  Eigen::RealSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  UnitaryEigensystem out{ComplexMatrix(n, n), Vector(n)};
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
      const double re = (a + d) / 2.0;
      const double im = std::sqrt(std::max(0.0, -((a - d) * (a - d) / 4.0 + b * c)));
      const std::complex<double> lambda(re, im);
      Eigen::Vector2cd v(b, lambda - a);
      v.normalize();
      const ComplexVector vec = q.middleCols(i, 2).cast<std::complex<double>>() * v;
      out.vectors.col(i) = vec;
      out.vectors.col(i + 1) = vec.conjugate();
      out.phases(i) = wrap_phase(std::arg(lambda));
      out.phases(i + 1) = wrap_phase(-std::arg(lambda));
      i += 2;
    } else {
      out.vectors.col(i) = q.col(i).cast<std::complex<double>>();
      out.phases(i) = t(i, i) < 0.0 ? std::numbers::pi : 0.0;
      i += 1;
    }
  }
  return out;
}

double compound_spectrum_check(const Matrix& u, int k) {
  const auto n = static_cast<int>(u.rows());
  if (n > 8) throw ResourceLimit("spectrum check limited to n <= 8");
  if (k < 1 || k > n) throw InvalidArgument("compound order outside [1, n]");
  const UnitaryEigensystem eig = orthogonal_eigensystem(u);
  const Matrix ck = compound(u, k).entries;
  const auto masks = enumerate_masks(n, k);
  double worst = 0.0;
  for (Mask s : masks) {
    ComplexMatrix vs(n, k);
    double phase = 0.0;
    Eigen::Index c = 0;
    for (Mask m = s; m != 0; m &= m - 1, ++c) {
      const int col = std::countr_zero(m);
      vs.col(c) = eig.vectors.col(col);
      phase += eig.phases(col);
    }
    ComplexVector state(static_cast<Eigen::Index>(masks.size()));
    for (std::size_t r = 0; r < masks.size(); ++r) {
      ComplexMatrix minor(k, k);
      Eigen::Index rr = 0;
      for (Mask m = masks[r]; m != 0; m &= m - 1, ++rr) minor.row(rr) = vs.row(std::countr_zero(m));
      state(static_cast<Eigen::Index>(r)) = minor.determinant();
    }
    const ComplexVector image = ck.cast<std::complex<double>>() * state;
    const std::complex<double> lambda = std::polar(1.0, phase);
    worst = std::max(worst, (image - lambda * state).norm());
  }
  return worst;
}

PrincipalAngles principal_angles_oracle(const Matrix& p, const Matrix& q, const Subset& rows,
                                        const Subset& cols, int k) {
  require_orthogonal(p);
  require_orthogonal(q);
  const auto n = static_cast<int>(p.rows());
  if (q.rows() != n || rows.n() != n || cols.n() != n) throw InvalidArgument("size mismatch");
  if (k < 1 || rows.weight() < k || cols.weight() < k) {
    throw InvalidArgument("need 1 <= k <= |I|, |J|");
  }
  const Matrix full = p.transpose() * q;
  const Matrix a = select_rows(select_rows(full, rows).transpose(), cols).transpose();
  Eigen::JacobiSVD<Matrix> svd(a);
  PrincipalAngles out;
  const auto r = static_cast<int>(svd.singularValues().size());
  out.sigma.assign(svd.singularValues().data(), svd.singularValues().data() + r);
  std::vector<double> products;
  for (Mask s : enumerate_masks(r, k)) {
    double prod = 1.0;
    for (Mask m = s; m != 0; m &= m - 1) prod *= out.sigma[std::countr_zero(m)];
    out.subsets.emplace_back(s, r);
    out.cosines.push_back(prod);
    products.push_back(prod);
  }

  // Column blocks of the compound matrices indexed by k-subsets of I and J.
  const Matrix pk = compound(p, k).entries;
  const Matrix qk = compound(q, k).entries;
  const auto all = enumerate_masks(n, k);
  std::vector<Eigen::Index> ci, cj;
  for (std::size_t idx = 0; idx < all.size(); ++idx) {
    if ((all[idx] & ~rows.mask()) == 0) ci.push_back(static_cast<Eigen::Index>(idx));
    if ((all[idx] & ~cols.mask()) == 0) cj.push_back(static_cast<Eigen::Index>(idx));
  }
  Matrix pi(pk.rows(), static_cast<Eigen::Index>(ci.size()));
  Matrix qj(qk.rows(), static_cast<Eigen::Index>(cj.size()));
  for (std::size_t c = 0; c < ci.size(); ++c) pi.col(static_cast<Eigen::Index>(c)) = pk.col(ci[c]);
  for (std::size_t c = 0; c < cj.size(); ++c) qj.col(static_cast<Eigen::Index>(c)) = qk.col(cj[c]);
  const Vector sv = Eigen::JacobiSVD<Matrix>(pi.transpose() * qj).singularValues();
  std::vector<double> direct(sv.data(), sv.data() + sv.size());
  std::sort(products.begin(), products.end(), std::greater<>());
  const std::size_t len = std::max(direct.size(), products.size());
  direct.resize(len, 0.0);
  products.resize(len, 0.0);
  for (std::size_t k2 = 0; k2 < len; ++k2) {
    out.cross_check_residual = std::max(out.cross_check_residual, std::abs(direct[k2] - products[k2]));
  }
  return out;
}

Matrix block_embedding(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("block embedding needs a square matrix");
  const auto m = a.rows();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  if (m > 0 && s(0) > 1.0 + 1e-12) {
    throw InvalidArgument("block embedding needs ||A|| <= 1, got " + std::to_string(s(0)));
  }
  const Vector comp = (1.0 - s.array().min(1.0).square()).sqrt().matrix();
  const Matrix& w = svd.matrixU();
  const Matrix& v = svd.matrixV();
  Matrix u(2 * m, 2 * m);
  u.topLeftCorner(m, m) = a;
  u.topRightCorner(m, m) = w * comp.asDiagonal() * w.transpose();
  u.bottomLeftCorner(m, m) = -(v * comp.asDiagonal() * v.transpose());
  u.bottomRightCorner(m, m) = a.transpose();
  return u;
}

std::vector<double> phase_distribution(const UnitaryEigensystem& eig, const ComplexVector& psi,
                                       int bits) {
  if (bits < 1 || bits > limits().sve_bits) {
    throw ResourceLimit("phase register limited to " + std::to_string(limits().sve_bits) + " bits");
  }
  if (psi.size() != eig.vectors.rows()) throw InvalidArgument("input state has the wrong size");
  const int size = 1 << bits;
  const Vector weights = (eig.vectors.adjoint() * psi).cwiseAbs2();
  std::vector<double> p(static_cast<std::size_t>(size), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(size);
#pragma omp parallel for if (size * weights.size() > 4096) schedule(static)
  for (std::ptrdiff_t m = 0; m < count; ++m) {
    const double centre = kTwoPi * static_cast<double>(m) / size;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
      if (weights(j) > 0.0) acc += weights(j) * fejer(eig.phases(j) - centre, size);
    }
    p[m] = acc;
  }
  return p;
}

std::vector<double> sector_phase_estimation(const Matrix& u, const ComplexVector& psi, int bits) {
  if (static_cast<std::size_t>(u.rows()) > limits().sve_dim) {
    throw ResourceLimit("phase estimation limited to dimension " + std::to_string(limits().sve_dim));
  }
  return phase_distribution(orthogonal_eigensystem(u), psi, bits);
}

SveProblem::SveProblem(Matrix u, int block, int k) : u_(std::move(u)), block_(block), k_(k) {
  require_orthogonal(u_);
  const int n = this->n();
  if (block < 1 || block > n) throw InvalidArgument("block size outside [1, n]");
  if (k < 1 || k > block) throw InvalidArgument("k outside [1, block]");
  if (n > kMaxPositions) throw InvalidArgument("at most 63 rows");
  if (binomial(n, k) > limits().sve_dim) {
    throw ResourceLimit("sector dimension C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") exceeds the phase estimation limit of " +
                        std::to_string(limits().sve_dim));
  }
  Eigen::JacobiSVD<Matrix> svd(u_.topLeftCorner(block, block), Eigen::ComputeFullV);
  sigma_ = svd.singularValues();
  right_ = svd.matrixV();
  compound_ = compound(u_, k).entries;

  const auto masks = enumerate_masks(n, k);
  const Mask inside = (Mask{1} << block) - 1;
  Vector proj(static_cast<Eigen::Index>(masks.size()));
  for (std::size_t r = 0; r < masks.size(); ++r) proj(static_cast<Eigen::Index>(r)) = (masks[r] & ~inside) == 0 ? 1.0 : 0.0;
  const Eigen::Index dim = proj.size();
  const Matrix reflect_p = Matrix(2.0 * proj.asDiagonal()) - Matrix::Identity(dim, dim);
  const Matrix reflect_q =
      2.0 * compound_ * proj.asDiagonal() * compound_.transpose() - Matrix::Identity(dim, dim);
  walk_ = reflect_p * reflect_q;
  eig_ = orthogonal_eigensystem(walk_);
}

Vector SveProblem::input_state(const Subset& s) const {
  if (s.n() != block_ || s.weight() != k_) throw InvalidArgument("subset must be a k-subset of the block");
  Matrix frame = Matrix::Zero(n(), k_);
  Eigen::Index c = 0;
  for (int pos : s.positions()) frame.col(c++).head(block_) = right_.col(pos - 1);
  const SectorState st = prepare_subspace_state_reference(OrthonormalFrame(frame));
  const Eigen::Map<const Vector> amps(st.amplitudes().data(), static_cast<Eigen::Index>(st.size()));
  return compound_ * amps;
}

double SveProblem::product_sigma(const Subset& s) const {
  double prod = 1.0;
  for (int pos : s.positions()) prod *= sigma_(pos - 1);
  return prod;
}

SveResult subspace_sve(const SveProblem& problem, const std::vector<Subset>& subsets,
                       const std::vector<double>& alphas, int bits, std::size_t shots,
                       std::uint64_t seed) {
  if (subsets.empty() || subsets.size() != alphas.size()) {
    throw InvalidArgument("need one amplitude per input subset");
  }
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  double norm = 0.0;
  for (double a : alphas) norm += a * a;
  if (norm <= 0.0) throw InvalidArgument("input amplitudes are all zero");

  SveResult out;
  out.bits = bits;
  std::vector<double> weights;
  std::vector<std::vector<double>> cdfs;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const Vector psi = problem.input_state(subsets[i]);
    const auto dist =
        phase_distribution(problem.eigensystem(), psi.cast<std::complex<double>>(), bits);
    const double w = alphas[i] * alphas[i] / norm;
    weights.push_back(w);
    for (std::size_t m = 0; m < dist.size(); ++m)
      if (w * dist[m] > 1e-12) out.peaks.push_back({subsets[i], static_cast<int>(m), w * dist[m]});
    cdfs.push_back(running_sum(dist));
  }
  const auto subset_cdf = running_sum(weights);
  const int size = 1 << bits;
  out.estimates.resize(shots);
  for (std::size_t shot = 0; shot < shots; ++shot) {
    CounterRng rng(seed, shot);
    const std::size_t which = draw(subset_cdf, rng.uniform());
    const auto m = static_cast<int>(draw(cdfs[which], rng.uniform()));
    PhaseEstimate& e = out.estimates[shot];
    e.s = subsets[which];
    e.outcome = m;
    e.bits = bits;
    e.phase = kTwoPi * m / size;
    e.theta = std::min(e.phase, kTwoPi - e.phase) / 2.0;
  }
  return out;
}

}  // namespace subspace
