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

#include "subspace/tda.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "subspace/clifford.hpp"
#include "subspace/errors.hpp"
#include "subspace/simulator.hpp"

namespace subspace {

namespace {

constexpr std::size_t kMaxSimplices = std::size_t{1} << 22;

bool simplex_less(Mask a, Mask b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

std::string label(Mask m) {
  std::string s = "{";
  bool first = true;
  for (Mask r = m; r != 0; r &= r - 1) {
    if (!first) s += ",";
    s += std::to_string(std::countr_zero(r) + 1);
    first = false;
  }
  return s + "}";
}

void check_n(int n) {
  if (n < 1 || n > kMaxPositions) {
    throw InvalidArgument("vertex count must lie in [1, 63], got " + std::to_string(n));
  }
}

int numeric_rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

}  // namespace

SimplicialComplex::SimplicialComplex(int n, std::vector<Mask> simplices) : n_(n) {
  check_n(n);
  const Mask allowed = n == 63 ? ~Mask{0} >> 1 : (Mask{1} << n) - 1;
  simplices.push_back(0);
  for (Mask m : simplices) {
    if (m & ~allowed) throw InvalidArgument("simplex " + label(m) + " uses a vertex above " + std::to_string(n));
  }
  std::sort(simplices.begin(), simplices.end(), simplex_less);
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  simplices_ = std::move(simplices);
  for (Mask m : simplices_) {
    for (Mask r = m; r != 0; r &= r - 1) {
      const Mask face = m & ~(r & (~r + 1));
      if (!contains(face)) {
        throw InvalidArgument("complex is not downward closed: " + label(m) +
                              " is present but its face " + label(face) + " is not");
      }
    }
  }
}

SimplicialComplex SimplicialComplex::closure(int n, const std::vector<Mask>& generators) {
  check_n(n);
  std::vector<Mask> all;
  for (Mask g : generators) {
    if (std::popcount(g) > 22) throw ResourceLimit("generator " + label(g) + " has too many faces");
    for (Mask sub = g;; sub = (sub - 1) & g) {
      all.push_back(sub);
      if (sub == 0) break;
    }
    if (all.size() > kMaxSimplices) throw ResourceLimit("complex exceeds 2^22 simplices");
  }
  return SimplicialComplex(n, std::move(all));
}

int SimplicialComplex::rank() const noexcept { return std::popcount(simplices_.back()) - 1; }

bool SimplicialComplex::contains(Mask m) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), m, simplex_less);
}

std::size_t SimplicialComplex::index_of(Mask m) const {
  const auto it = std::lower_bound(simplices_.begin(), simplices_.end(), m, simplex_less);
  if (it == simplices_.end() || *it != m) throw InvalidArgument("simplex " + label(m) + " not in the complex");
  return static_cast<std::size_t>(it - simplices_.begin());
}

std::size_t SimplicialComplex::count_of_size(int vertices) const {
  return static_cast<std::size_t>(std::count_if(simplices_.begin(), simplices_.end(), [&](Mask m) {
    return std::popcount(m) == vertices;
  }));
}

std::size_t SimplicialComplex::extensions(Mask x) const {
  std::size_t count = 0;
  for (int v = 0; v < n_; ++v) {
    const Mask b = Mask{1} << v;
    if (!(x & b) && contains(x | b)) ++count;
  }
  return count;
}

SimplicialComplex complete_complex(int n) {
  if (n < 1 || n > 16) throw InvalidArgument("complete complex needs 1 <= n <= 16");
  std::vector<Mask> all(std::size_t{1} << n);
  for (std::size_t m = 0; m < all.size(); ++m) all[m] = m;
  return SimplicialComplex(n, std::move(all));
}

SimplicialComplex clique_complex(int n, const std::vector<std::pair<int, int>>& edges,
                                 int max_vertices) {
  check_n(n);
  std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : edges) {
    if (a < 1 || b < 1 || a > n || b > n || a == b) {
      throw InvalidArgument("bad edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    adj[a - 1] |= Mask{1} << (b - 1);
    adj[b - 1] |= Mask{1} << (a - 1);
  }
  const int cap = max_vertices < 0 ? n : max_vertices;
  std::vector<Mask> all{0};
  std::vector<Mask> layer;
  for (int v = 0; v < n && cap >= 1; ++v) layer.push_back(Mask{1} << v);
  for (int size = 1; !layer.empty(); ++size) {
    all.insert(all.end(), layer.begin(), layer.end());
    if (all.size() > kMaxSimplices) throw ResourceLimit("clique complex exceeds 2^22 simplices");
    if (size >= cap) break;
    std::vector<Mask> next;
    for (Mask s : layer) {
      const int top = 63 - std::countl_zero(s);
      for (int v = top + 1; v < n; ++v)
        if ((adj[v] & s) == s) next.push_back(s | (Mask{1} << v));
    }
    layer.swap(next);
  }
  return SimplicialComplex(n, std::move(all));
}

SimplicialComplex vietoris_rips(const Matrix& points, double scale, int max_vertices) {
  const auto n = static_cast<int>(points.rows());
  check_n(n);
  if (!(scale >= 0.0)) throw InvalidArgument("scale must be non-negative");
  const double cut = scale * (1.0 + 1e-12) + 1e-15;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if ((points.row(a) - points.row(b)).norm() <= cut) edges.emplace_back(a + 1, b + 1);
  return clique_complex(n, edges, max_vertices);
}

SimplicialComplex complex_from_json(const nlohmann::json& j, bool close) {
  if (!j.is_object() || !j.contains("n") || !j.contains("simplices")) {
    throw InvalidArgument("complex JSON needs \"n\" and \"simplices\"");
  }
  const int n = j.at("n").get<int>();
  check_n(n);
  std::vector<Mask> masks;
  for (const auto& s : j.at("simplices")) {
    const auto positions = s.get<std::vector<int>>();
    masks.push_back(Subset::from_positions(n, positions).mask());
  }
  return close ? SimplicialComplex::closure(n, masks) : SimplicialComplex(n, std::move(masks));
}

nlohmann::ordered_json to_json(const SimplicialComplex& c) {
  nlohmann::ordered_json out;
  out["n"] = c.n();
  out["simplices"] = nlohmann::ordered_json::array();
  for (Mask m : c.simplices()) {
    if (m != 0) out["simplices"].push_back(Subset(m, c.n()).positions());
  }
  return out;
}

IntSparse boundary_matrix(const SimplicialComplex& c) {
  const auto size = static_cast<Eigen::Index>(c.size());
  std::vector<Eigen::Triplet<int>> entries;
  for (Eigen::Index col = 0; col < size; ++col) {
    const Mask x = c.simplices()[col];
    int j = 0;
    for (Mask r = x; r != 0; r &= r - 1, ++j) {
      const Mask face = x & ~(r & (~r + 1));
      entries.emplace_back(static_cast<Eigen::Index>(c.index_of(face)), col, (j % 2 == 0) ? 1 : -1);
    }
  }
  IntSparse d(size, size);
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

DiracLaplacian dirac_and_laplacian(const SimplicialComplex& c) {
  const Sparse d = boundary_matrix(c).cast<double>();
  const Sparse dt = d.transpose();
  DiracLaplacian out;
  out.dirac.basis = c.simplices();
  out.dirac.matrix = d + dt;
  out.laplacian = Sparse(d * dt) + Sparse(dt * d);
  out.laplacian.prune(0.0);
  return out;
}

LaplacianReport laplacian_check(const SimplicialComplex& c) {
  const DiracLaplacian dl = dirac_and_laplacian(c);
  LaplacianReport rep;
  const Sparse square = dl.dirac.matrix * dl.dirac.matrix;
  rep.square_residual = Sparse(square - dl.laplacian).norm();
  for (Eigen::Index col = 0; col < dl.laplacian.outerSize(); ++col) {
    const Mask x = c.simplices()[col];
    double diag = 0.0;
    for (Sparse::InnerIterator it(dl.laplacian, col); it; ++it) {
      if (it.row() == col) {
        diag = it.value();
      } else if (it.value() != 0.0) {
        const int v = static_cast<int>(std::lround(it.value()));
        rep.off_diagonal_values.insert(v);
        if (std::abs(v) > 2 || std::abs(it.value() - v) > 1e-12) rep.off_diagonal_counterexample = true;
      }
    }
    const double expected = std::popcount(x) + static_cast<double>(c.extensions(x));
    rep.diagonal_residual = std::max(rep.diagonal_residual, std::abs(diag - expected));
  }
  return rep;
}

double embedding_check(const SimplicialComplex& c) {
  const int n = c.n();
  if (n > limits().unitary_qubits) {
    throw ResourceLimit("embedding check builds a dense 2^n operator; n limited to " +
                        std::to_string(limits().unitary_qubits));
  }
  const Vector x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Matrix g = gamma_dense(x).matrix * std::sqrt(static_cast<double>(n));
  const Matrix d = Matrix(dirac_and_laplacian(c).dirac.matrix);
  const auto& basis = c.simplices();
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      worst = std::max(worst, std::abs(g(static_cast<Eigen::Index>(basis[a]), static_cast<Eigen::Index>(basis[b])) -
                                       d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))));
  return worst;
}

BettiReport betti_numbers(const SimplicialComplex& c) {
  const int top = c.rank() + 1;  // largest simplex size
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(top) + 2, 0);
  for (int s = 0; s <= top; ++s) offset[s + 1] = offset[s] + static_cast<Eigen::Index>(c.count_of_size(s));
  for (int s = 0; s <= top; ++s) {
    if (static_cast<std::size_t>(offset[s + 1] - offset[s]) > limits().laplacian_block) {
      throw ResourceLimit("Laplacian block of size " + std::to_string(offset[s + 1] - offset[s]) +
                          " exceeds the limit of " + std::to_string(limits().laplacian_block));
    }
  }
  const DiracLaplacian dl = dirac_and_laplacian(c);
  const Matrix d = Matrix(boundary_matrix(c).cast<double>());

  // kernel[s]: reduced homology in dimension s - 1; rank[s]: boundary from size s to s - 1.
  std::vector<int> kernel(static_cast<std::size_t>(top) + 1, 0), rank(static_cast<std::size_t>(top) + 2, 0);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s <= top; ++s) {
    const Eigen::Index lo = offset[s], len = offset[s + 1] - offset[s];
    const Matrix block = Matrix(dl.laplacian).block(lo, lo, len, len);
    if (len > 0) {
      const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(block, Eigen::EigenvaluesOnly).eigenvalues();
      const double cut = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
      kernel[s] = static_cast<int>((ev.array().abs() <= cut).count());
    }
    if (s >= 1) rank[s] = numeric_rank(d.block(offset[s - 1], lo, offset[s] - offset[s - 1], len));
  }

  BettiReport rep;
  for (int p = 0; p + 1 <= top; ++p) {
    const int s = p + 1;
    rep.betti.push_back(kernel[s] + (p == 0 ? 1 : 0));
    const int down = s == 1 ? 0 : rank[s];
    const int count = static_cast<int>(offset[s + 1] - offset[s]);
    rep.betti_from_ranks.push_back(count - down - rank[s + 1]);
  }
  rep.reduced_beta0 = top >= 1 ? kernel[1] : 0;
  return rep;
}

LoaderEncodingReport loader_block_encoding_depth(int n) {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw InvalidArgument("loader block encoding needs n a power of 2, n >= 2");
  }
  const Vector x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Circuit half = log_unloader(x);
  const Circuit full = log_loader(x);
  LoaderEncodingReport rep;
  rep.n = n;
  rep.unloader_depth = half.depth();
  rep.depth = full.depth();
  rep.gate_count = full.gate_count();
  if (n <= 8) {
    const Matrix u = circuit_unitary(full);
    rep.verified = true;
    rep.unitary_residual = (u - gamma_dense(x).matrix).cwiseAbs().maxCoeff();
    rep.involution_residual = (u * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  }
  return rep;
}

}  // namespace subspace
