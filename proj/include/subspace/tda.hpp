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
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <json.hpp>

#include "subspace/linalg.hpp"
#include "subspace/subset.hpp"

namespace subspace {

/// Downward-closed family of subsets of {1..n}. The empty simplex is always
/// a member. Simplices are kept sorted by size, then colex.
class SimplicialComplex {
 public:
  /// Throws InvalidArgument naming a simplex and a missing face when the
  /// list is not closed under taking subsets.
  SimplicialComplex(int n, std::vector<Mask> simplices);

  /// Smallest complex containing every generator.
  static SimplicialComplex closure(int n, const std::vector<Mask>& generators);

  int n() const noexcept { return n_; }
  /// Largest simplex dimension (size - 1); -1 if only the empty simplex.
  int rank() const noexcept;
  const std::vector<Mask>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  bool contains(Mask m) const;
  /// Position in simplices(); throws InvalidArgument if absent.
  std::size_t index_of(Mask m) const;
  /// Number of simplices with `vertices` vertices.
  std::size_t count_of_size(int vertices) const;
  /// Number of (p+1)-simplices in the complex that contain x.
  std::size_t extensions(Mask x) const;

 private:
  int n_;
  std::vector<Mask> simplices_;
};

/// All 2^n subsets. n <= 16.
SimplicialComplex complete_complex(int n);
/// Cliques of a graph with 1-based edges, up to max_vertices per simplex
/// (-1 for no cap).
SimplicialComplex clique_complex(int n, const std::vector<std::pair<int, int>>& edges,
                                 int max_vertices = -1);
/// Rows of `points` are the vertices; a simplex enters when every pairwise
/// Euclidean distance is at most `scale`.
SimplicialComplex vietoris_rips(const Matrix& points, double scale, int max_vertices = -1);

/// {"n": n, "simplices": [[1,2],[1],...]}; with close = false the list must
/// already be downward closed.
SimplicialComplex complex_from_json(const nlohmann::json& j, bool close = false);
nlohmann::ordered_json to_json(const SimplicialComplex& c);

using IntSparse = Eigen::SparseMatrix<int>;
using Sparse = Eigen::SparseMatrix<double>;

/// d(x^j, x) = (-1)^(j-1) where x^j drops the j-th smallest vertex of x.
/// Rows and columns follow c.simplices(); vertices map to the empty simplex.
IntSparse boundary_matrix(const SimplicialComplex& c);

struct DiracOperator {
  std::vector<Mask> basis;
  Sparse matrix;
};

struct DiracLaplacian {
  DiracOperator dirac;
  /// D^2 = d d^T + d^T d.
  Sparse laplacian;
};

DiracLaplacian dirac_and_laplacian(const SimplicialComplex& c);

struct LaplacianReport {
  /// max_x |Delta(x,x) - (|x| + ext(x))|.
  double diagonal_residual = 0.0;
  /// Distinct nonzero off-diagonal values seen.
  std::set<int> off_diagonal_values;
  /// True when some off-diagonal value lies outside {0, +-1, +-2}.
  bool off_diagonal_counterexample = false;
  /// ||D^2 - Delta|| (Frobenius).
  double square_residual = 0.0;
};

LaplacianReport laplacian_check(const SimplicialComplex& c);

/// max |sqrt(n) Gamma(1/sqrt(n))[C, C] - D(C)| with the rows taken at the
/// masks of c. n <= limits().unitary_qubits.
double embedding_check(const SimplicialComplex& c);

struct BettiReport {
  /// Unreduced beta_0 .. beta_r from Laplacian kernels.
  std::vector<int> betti;
  /// Reduced beta_0 (one less than beta_0 for a nonempty complex).
  int reduced_beta0 = 0;
  /// The same numbers from ranks of the boundary blocks.
  std::vector<int> betti_from_ranks;
};

/// Per-size Laplacian blocks are capped by limits().laplacian_block.
BettiReport betti_numbers(const SimplicialComplex& c);

struct LoaderEncodingReport {
  int n = 0;
  /// Depth of the log-depth unloading half and of the full loader.
  int unloader_depth = 0;
  int depth = 0;
  std::size_t gate_count = 0;
  bool verified = false;
  /// max |U - Gamma(1/sqrt(n))| and max |U^2 - I|, when verified.
  double unitary_residual = 0.0;
  double involution_residual = 0.0;
};

/// Log-depth loader for the uniform vector, checked densely when n <= 8.
/// Requires n a power of 2.
LoaderEncodingReport loader_block_encoding_depth(int n);

}  // namespace subspace
