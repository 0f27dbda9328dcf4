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

#include <string_view>
#include <vector>

#include "subspace/circuit.hpp"
#include "subspace/linalg.hpp"
#include "subspace/subset.hpp"

namespace subspace {

/// Gamma(x) = sum_i x_i Z^(i-1) X I^(n-i) as a dense 2^n x 2^n matrix,
/// indexed by mask. Gamma(x)|S> = sum_i (-1)^{|S below i|} x_i |S xor i>.
struct GammaOperator {
  int n = 0;
  Matrix matrix;
};

/// Requires a unit vector (to 1e-10) and n <= limits().unitary_qubits.
GammaOperator gamma_dense(const Vector& x);

/// D(x)^* X_1 D(x) in time order, D(x) = RBS_{12}(t_1) ... RBS_{n-1,n}(t_{n-1})
/// from the spherical angles of x: 2(n-1) RBS gates and one X.
Circuit linear_loader(const Vector& x);

/// Log-depth unloading network on n = 2^m qubits: maps the unary encoding
/// of x to |e_1> on the weight-one sector. Its CX gates never touch qubit 1.
Circuit log_unloader(const Vector& x);

/// L, X_1, L^{-1} with L = log_unloader(x). Requires n a power of 2.
Circuit log_loader(const Vector& x);

enum class LoaderMode { kLinear, kLog };
LoaderMode parse_loader_mode(std::string_view name);
std::string_view loader_mode_name(LoaderMode mode);

/// Smallest power of two >= n.
int padded_size(int n);

/// Loader circuit for either mode. In log mode x is zero-padded to the next
/// power of two; the extra qubits are never flipped, so the circuit acts as
/// Gamma(x) tensor identity.
Circuit clifford_loader(const Vector& x, LoaderMode mode);

/// Weight d-1 and d+1 parts of C(x)|Col(Y)> against
/// cos(t)|Col(Y')> and sin(t)|Col(Y, x_perp)>, each compared up to sign.
struct LoaderActionReport {
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  double lower_norm = 0.0;
  double upper_norm = 0.0;
  double lower_residual = 0.0;
  double upper_residual = 0.0;
  /// Mass on weights other than d-1 and d+1.
  double stray_mass = 0.0;

  double residual() const;
};

LoaderActionReport loader_action_check(const Vector& x, const OrthonormalFrame& y,
                                       LoaderMode mode = LoaderMode::kLinear);

/// Coefficient of e_{T xor S} in C(x_1) C(x_2) ... C(x_k) |e_T> (x_k acts
/// first) as a signed sum over hypercube paths. The sign of a path p is the
/// parity of the inversions in the list (p(1), ..., p(k), t_1 < ... < t_m).
/// Limited to k <= 6 and n <= 8.
double loader_amplitude_path_sum(const std::vector<Vector>& xs, const Subset& t, const Subset& s);

/// Same coefficient by dense products of Gamma matrices.
double loader_amplitude_dense(const std::vector<Vector>& xs, const Subset& t, const Subset& s);

}  // namespace subspace
