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

// OpenMP kernels against their serial references, plus loader depth counters.

#include <cmath>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "subspace/clifford.hpp"
#include "subspace/det_sampling.hpp"
#include "subspace/kernels.hpp"
#include "subspace/linalg.hpp"
#include "subspace/random.hpp"

namespace {

using namespace subspace;

std::vector<double> random_amplitudes(std::size_t size, std::uint64_t seed) {
  std::vector<double> a(size);
  for (std::size_t k = 0; k < size; ++k) a[k] = CounterRng(seed, k).normal();
  const double norm = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
  for (double& v : a) v /= norm;
  return a;
}

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.normal();
  return m;
}

template <bool Parallel>
void BM_ApplyDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(std::size_t{1} << n, 1);
  const Gate g = Gate::fbs(1, n, 0.3);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::apply_dense(amps, n, g);
    else kernels::serial::apply_dense(amps, n, g);
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(amps.size()));
}

template <bool Parallel>
void BM_ApplySector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const kernels::SectorIndex index(n, n / 2);
  const auto in = random_amplitudes(index.size(), 2);
  std::vector<double> out(in.size());
  const Gate g = Gate::fbs(2, n - 1, 0.7);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::apply_sector(in, out, index, g);
    else kernels::serial::apply_sector(in, out, index, g);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.size()));
}

template <bool Parallel>
void BM_Compound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, n, 3);
  for (auto _ : state) {
    auto c = Parallel ? compound(a, 3) : serial::compound(a, 3);
    benchmark::DoNotOptimize(c.entries.data());
  }
}

template <bool Parallel>
void BM_SampleIndices(benchmark::State& state) {
  const auto shots = static_cast<std::size_t>(state.range(0));
  const auto cdf = kernels::squared_cdf(random_amplitudes(4096, 4));
  for (auto _ : state) {
    auto s = Parallel ? kernels::sample_indices(cdf, shots, 5) : kernels::serial::sample_indices(cdf, shots, 5);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shots));
}

template <bool Parallel>
void BM_ClassicalDpp(benchmark::State& state) {
  const Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(48, 8, 6)).householderQ() * Matrix::Identity(48, 8);
  const OrthonormalFrame x(q);
  const auto shots = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = Parallel ? classical_dpp_sample(x, shots, 7) : serial::classical_dpp_sample(x, shots, 7);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(shots));
}

// Not a timing: reports gate depth of the two loaders as counters.
void BM_LoaderDepth(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Vector x = Vector::Constant(n, 1.0 / std::sqrt(n));
  int linear = 0, log = 0;
  for (auto _ : state) {
    linear = linear_loader(x).depth();
    log = log_loader(x).depth();
  }
  state.counters["linear_depth"] = linear;
  state.counters["log_depth"] = log;
}

}  // namespace

BENCHMARK(BM_ApplyDense<false>)->Name("apply_dense/serial")->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_ApplyDense<true>)->Name("apply_dense/omp")->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_ApplySector<false>)->Name("apply_sector/serial")->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_ApplySector<true>)->Name("apply_sector/omp")->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_Compound<false>)->Name("compound_k3/serial")->Arg(12)->Arg(20);
BENCHMARK(BM_Compound<true>)->Name("compound_k3/omp")->Arg(12)->Arg(20);
BENCHMARK(BM_SampleIndices<false>)->Name("sample_indices/serial")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_SampleIndices<true>)->Name("sample_indices/omp")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_ClassicalDpp<false>)->Name("classical_dpp/serial")->Arg(1 << 12);
BENCHMARK(BM_ClassicalDpp<true>)->Name("classical_dpp/omp")->Arg(1 << 12);
BENCHMARK(BM_LoaderDepth)->Name("loader_depth")->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
