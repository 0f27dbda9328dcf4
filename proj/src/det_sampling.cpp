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

#include "subspace/det_sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "subspace/errors.hpp"
#include "subspace/kernels.hpp"
#include "subspace/random.hpp"

namespace subspace {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// One draw of the sequential sampler. `v` is scratch of size n x d.
Mask dpp_draw(const Matrix& x, Matrix& v, std::vector<double>& weights, CounterRng& rng) {
  const auto n = x.rows();
  const auto d = x.cols();
  v = x;
  Mask chosen = 0;
  for (Eigen::Index step = 0; step < d; ++step) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      weights[i] = (chosen >> i) & 1U ? 0.0 : v.row(i).squaredNorm();
      total += weights[i];
    }
    double u = rng.uniform() * total;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (weights[i] <= 0.0) continue;
      pick = i;
      if (u < weights[i]) break;
      u -= weights[i];
    }
    chosen |= Mask{1} << pick;
    // Remove the picked row's direction from the column space.
    const Vector dir = v.row(pick).transpose() / std::sqrt(weights[pick]);
    v -= (v * dir) * dir.transpose();
  }
  return chosen;
}

template <bool Parallel>
std::vector<Subset> dpp_samples(const OrthonormalFrame& x, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  std::vector<Mask> masks(shots);
  const auto total = static_cast<std::ptrdiff_t>(shots);
  const Matrix& xm = x.matrix();
#pragma omp parallel if (Parallel)
  {
    Matrix v(xm.rows(), xm.cols());
    std::vector<double> weights(static_cast<std::size_t>(xm.rows()));
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < total; ++s) {
      CounterRng rng(seed, static_cast<std::uint64_t>(s));
      masks[s] = dpp_draw(xm, v, weights, rng);
    }
  }
  std::vector<Subset> out;
  out.reserve(shots);
  for (Mask m : masks) out.emplace_back(m, x.n());
  return out;
}

}  // namespace

double DetDistribution::prob(const Subset& s) const {
  return probs.at(rank_subset(s, n, d));
}

DetDistribution exact_distribution(const Matrix& a) {
  const OrthonormalFrame x = orthogonalize(a);
  const SectorState st = prepare_subspace_state_reference(x);
  DetDistribution dist{x.n(), x.d(), st.index().masks, {}};
  dist.probs.resize(st.size());
  double total = 0.0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    dist.probs[k] = st.amplitudes()[k] * st.amplitudes()[k];
    total += dist.probs[k];
  }
  for (double& p : dist.probs) p /= total;
  return dist;
}

std::vector<Subset> exact_sample(const DetDistribution& dist, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  std::vector<double> cdf(dist.probs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) cdf[k] = acc += dist.probs[k];
  for (double& c : cdf) c /= acc;
  std::vector<Subset> out;
  out.reserve(shots);
  for (std::size_t k : kernels::sample_indices(cdf, shots, seed)) out.emplace_back(dist.masks[k], dist.n);
  return out;
}

std::vector<Subset> classical_dpp_sample(const OrthonormalFrame& x, std::size_t shots,
                                         std::uint64_t seed) {
  return dpp_samples<true>(x, shots, seed);
}

namespace serial {
std::vector<Subset> classical_dpp_sample(const OrthonormalFrame& x, std::size_t shots,
                                         std::uint64_t seed) {
  return dpp_samples<false>(x, shots, seed);
}
}  // namespace serial

Circuit determinant_circuit(const OrthonormalFrame& x, LoaderMode mode) {
  Circuit c;
  for (int col = 0; col < x.d(); ++col) {
    const Circuit loader = clifford_loader(x.matrix().col(col), mode);
    if (col == 0) c = Circuit(loader.n(), "determinant-sampler");
    c.append(loader);
  }
  return c;
}

QuantumSampleResult quantum_det_sample(const OrthonormalFrame& x, std::size_t shots,
                                       std::uint64_t seed, LoaderMode mode) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  const int n = x.n();
  const int d = x.d();
  const int q = mode == LoaderMode::kLog ? padded_size(n) : n;
  if (q > limits().quantum_sampling_qubits) {
    throw ResourceLimit("quantum sampling simulates " + std::to_string(q) +
                        " qubits densely; the limit is " +
                        std::to_string(limits().quantum_sampling_qubits));
  }
  QuantumSampleResult r;
  r.circuit = determinant_circuit(x, mode);
  r.loader_depth = clifford_loader(x.matrix().col(0), mode).depth();
  StateVector state = StateVector::basis(q, 0);
  state.apply(r.circuit);
  r.leakage = state.weight_leakage(d);

  const SectorState ref = prepare_subspace_state_reference(x);
  const auto& masks = ref.index().masks;
  r.amplitudes.resize(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) r.amplitudes[k] = state.amplitudes()[masks[k]];
  const auto& want = ref.amplitudes();
  const auto big = static_cast<std::size_t>(
      std::max_element(want.begin(), want.end(),
                       [](double a, double b) { return std::abs(a) < std::abs(b); }) -
      want.begin());
  if ((r.amplitudes[big] < 0.0) != (want[big] < 0.0)) {
    for (double& a : r.amplitudes) a = -a;
  }
  double err = 0.0;
  for (std::size_t k = 0; k < masks.size(); ++k) err += std::pow(r.amplitudes[k] - want[k], 2);
  r.amplitude_residual = std::sqrt(err);

  const auto cdf = kernels::squared_cdf(state.amplitudes());
  const auto idx = kernels::sample_indices(cdf, shots, seed);
  r.samples.reserve(shots);
  for (std::size_t m : idx) r.samples.emplace_back(static_cast<Mask>(m), n);
  return r;
}

SampleStatistics compare_samples(const std::string& method, const std::vector<Subset>& samples,
                                 const DetDistribution& dist) {
  SampleStatistics st;
  st.method = method;
  for (const Subset& s : samples) ++st.counts[s.mask()];
  const auto shots = static_cast<double>(samples.size());
  bool outside = false;
  std::size_t support = 0;
  std::map<Mask, double> probs;
  for (std::size_t k = 0; k < dist.masks.size(); ++k) {
    if (dist.probs[k] > 0.0) {
      probs[dist.masks[k]] = dist.probs[k];
      ++support;
    }
  }
  double tv = 0.0;
  for (const auto& [m, p] : probs) {
    const auto it = st.counts.find(m);
    const double obs = it == st.counts.end() ? 0.0 : static_cast<double>(it->second);
    tv += std::abs(obs / shots - p);
    const double expect = p * shots;
    st.chi_square += (obs - expect) * (obs - expect) / expect;
  }
  for (const auto& [m, c] : st.counts) {
    if (!probs.count(m)) {
      tv += static_cast<double>(c) / shots;
      outside = true;
    }
  }
  st.tv_distance = tv / 2.0;
  st.dof = static_cast<int>(support) - 1;
  if (outside) {
    st.p_value = 0.0;
  } else if (st.dof <= 0) {
    st.p_value = 1.0;
  } else {
    st.p_value = boost::math::gamma_q(st.dof / 2.0, st.chi_square / 2.0);
  }
  return st;
}

SamplerReport sampler_report(const Matrix& a, std::size_t shots, std::uint64_t seed, LoaderMode mode) {
  SamplerReport r;
  const OrthonormalFrame x = orthogonalize(a);
  const DetDistribution dist = exact_distribution(a);
  r.n = x.n();
  r.d = x.d();
  r.shots = shots;
  r.seed = seed;
  r.mode = mode;

  auto start = Clock::now();
  auto exact = exact_sample(dist, shots, derive_seed(seed, 1));
  r.methods.push_back(compare_samples("exact", exact, dist));
  r.methods.back().seconds_per_sample = seconds_since(start) / static_cast<double>(shots);

  start = Clock::now();
  auto classical = classical_dpp_sample(x, shots, derive_seed(seed, 2));
  r.methods.push_back(compare_samples("classical", classical, dist));
  r.methods.back().seconds_per_sample = seconds_since(start) / static_cast<double>(shots);

  start = Clock::now();
  auto quantum = quantum_det_sample(x, shots, derive_seed(seed, 3), mode);
  r.methods.push_back(compare_samples("quantum", quantum.samples, dist));
  r.methods.back().seconds_per_sample = seconds_since(start) / static_cast<double>(shots);
  r.amplitude_residual = quantum.amplitude_residual;
  r.leakage = quantum.leakage;
  r.circuit_depth = quantum.circuit.depth();
  r.circuit_gates = quantum.circuit.gate_count();
  r.loader_depth = quantum.loader_depth;
  return r;
}

nlohmann::ordered_json counts_json(const std::map<Mask, std::size_t>& counts, int n) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [m, c] : counts) j[Subset(m, n).to_string()] = c;
  return j;
}

nlohmann::ordered_json to_json(const SamplerReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["shots"] = r.shots;
  j["seed"] = r.seed;
  j["loader"] = loader_mode_name(r.mode);
  auto methods = nlohmann::ordered_json::array();
  nlohmann::ordered_json timing;
  for (const auto& m : r.methods) {
    nlohmann::ordered_json e;
    e["method"] = m.method;
    e["tv_distance"] = m.tv_distance;
    e["chi_square"] = m.chi_square;
    e["dof"] = m.dof;
    e["p_value"] = m.p_value;
    e["counts"] = counts_json(m.counts, r.n);
    methods.push_back(std::move(e));
    timing[m.method + "_seconds_per_sample"] = m.seconds_per_sample;
  }
  j["methods"] = std::move(methods);
  j["quantum_circuit"] = {{"depth", r.circuit_depth},
                          {"gates", r.circuit_gates},
                          {"loader_depth", r.loader_depth},
                          {"amplitude_residual", r.amplitude_residual},
                          {"leakage", r.leakage}};
  j["timing"] = std::move(timing);
  return j;
}

}  // namespace subspace
