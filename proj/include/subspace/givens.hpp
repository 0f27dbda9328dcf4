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

#include <json.hpp>

#include "subspace/circuit.hpp"
#include "subspace/linalg.hpp"
#include "subspace/simulator.hpp"
#include "subspace/subset.hpp"

namespace subspace {

struct Rotation {
  int i = 0;
  int j = 0;
  double theta = 0.0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// Rotations listed in application order together with a sign per column.
/// With G_1 applied first,
///   G_m ... G_1 I_{n,d} diag(signs) = target,
/// so the circuit itself realizes target * diag(signs). d = signs.size();
/// full orthogonal decompositions have d = n.
struct GivensDecomposition {
  int n = 0;
  std::vector<Rotation> rotations;
  std::vector<int> signs;

  int d() const noexcept { return static_cast<int>(signs.size()); }
  /// n x d product described above.
  Matrix reconstruct() const;
  /// RBS for neighbouring qubits, FBS otherwise.
  Circuit to_circuit() const;
};

/// Adjacent-rotation triangle for an n x d frame: column c is cleared from
/// the bottom row upwards, c = 1..d. Uses nd - d(d+1)/2 rotations for a
/// generic frame; rotations with an exactly zero angle are dropped.
GivensDecomposition pyramid_decompose(const OrthonormalFrame& u);

/// Recursive cosine-sine decomposition of an n x n orthogonal matrix,
/// n a power of two. Each level contributes n/2 rotations G(i, i+n/2).
GivensDecomposition sine_cosine_decompose(const Matrix& u);

/// Cosine-sine factors of an orthogonal matrix with even size 2m:
///   u = (l0 + l1) [[C, -S], [S, C]] (r0 + r1)
/// with c ascending and s >= 0.
struct CosineSine {
  Matrix l0, l1, r0, r1;
  Vector c, s;
};
CosineSine cosine_sine(const Matrix& u);

/// Extends the frame to an n x n orthogonal matrix whose first d columns
/// are exactly X.
Matrix complete_to_orthogonal(const OrthonormalFrame& x);

enum class GivensMethod { kPyramid, kSineCosine };
GivensMethod parse_givens_method(std::string_view name);

/// Pyramid takes any frame. The sine-cosine route completes a frame to an
/// orthogonal matrix and pads it with an identity block up to the next power
/// of two, so the decomposition may have more qubits than u has rows.
GivensDecomposition decompose(const Matrix& u, GivensMethod method);

/// Runs the Givens circuit of U on |S> in the weight-|S| sector and
/// removes the residual column signs: returns |Col(U_S)>, where U_S keeps
/// the columns of U listed in S. S may live on fewer positions than dec.n
/// when the decomposition was padded.
SectorState prepare_via_givens(const GivensDecomposition& dec, const Subset& s);
SectorState prepare_via_givens(const Matrix& u, const Subset& s, GivensMethod method);

nlohmann::ordered_json to_json(const GivensDecomposition& dec);
GivensDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace subspace
