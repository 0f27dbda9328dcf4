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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "subspace/circuit.hpp"
#include "subspace/clifford.hpp"
#include "subspace/linalg.hpp"
#include "subspace/simulator.hpp"
#include "subspace/subset.hpp"

namespace subspace {

/// p(S) = det(A_S)^2 / det(A^T A) over weight-d subsets in colex order.
struct DetDistribution {
  int n = 0;
  int d = 0;
  std::vector<Mask> masks;
  std::vector<double> probs;

  double prob(const Subset& s) const;
};

/// Throws DegenerateInput for rank-deficient A.
DetDistribution exact_distribution(const Matrix& a);

/// Inverse-CDF draws from the exact distribution.
std::vector<Subset> exact_sample(const DetDistribution& dist, std::size_t shots, std::uint64_t seed);

/// Sequential projection sampler: pick row i with probability ||V_i||^2 / r,
/// then project the remaining columns of V away from V_i. O(nd^2) per draw.
/// Shot s uses CounterRng(seed, s).
std::vector<Subset> classical_dpp_sample(const OrthonormalFrame& x, std::size_t shots,
                                         std::uint64_t seed);

namespace serial {
std::vector<Subset> classical_dpp_sample(const OrthonormalFrame& x, std::size_t shots,
                                         std::uint64_t seed);
}  // namespace serial

/// Product of the column loaders applied to |0^n>, first column first.
Circuit determinant_circuit(const OrthonormalFrame& x, LoaderMode mode);

struct QuantumSampleResult {
  std::vector<Subset> samples;
  /// Final amplitudes on the weight-d sector, with the global sign chosen so
  /// that the largest reference amplitude agrees.
  std::vector<double> amplitudes;
  /// Squared norm outside the weight-d sector.
  double leakage = 0.0;
  /// || aligned amplitudes - det(X_S) ||.
  double amplitude_residual = 0.0;
  Circuit circuit;
  int loader_depth = 0;
};

/// Dense simulation of the loader product; needs the (padded) qubit count
/// within limits().quantum_sampling_qubits.
QuantumSampleResult quantum_det_sample(const OrthonormalFrame& x, std::size_t shots,
                                       std::uint64_t seed, LoaderMode mode);

struct SampleStatistics {
  std::string method;
  std::map<Mask, std::size_t> counts;
  double tv_distance = 0.0;
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  double seconds_per_sample = 0.0;
};

/// Compares samples with the exact distribution. Degrees of freedom are the
/// support size minus one; a draw outside the support gives p = 0.
SampleStatistics compare_samples(const std::string& method, const std::vector<Subset>& samples,
                                 const DetDistribution& dist);

struct SamplerReport {
  int n = 0;
  int d = 0;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  LoaderMode mode = LoaderMode::kLog;
  std::vector<SampleStatistics> methods;
  double amplitude_residual = 0.0;
  double leakage = 0.0;
  int circuit_depth = 0;
  std::size_t circuit_gates = 0;
  int loader_depth = 0;
};

/// Runs the exact, classical and quantum samplers with independent child
/// seeds.
SamplerReport sampler_report(const Matrix& a, std::size_t shots, std::uint64_t seed, LoaderMode mode);

/// {"1,2": count, ...} in colex order.
nlohmann::ordered_json counts_json(const std::map<Mask, std::size_t>& counts, int n);
/// Wall-clock fields go under "timing".
nlohmann::ordered_json to_json(const SamplerReport& r);

}  // namespace subspace
