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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subspace/det_sampling.hpp"
#include "subspace/errors.hpp"
#include "subspace/random.hpp"

using namespace subspace;

namespace {

// Exact probabilities from Leibniz minors of the raw matrix.
std::vector<double> oracle_probs(const Matrix& a) {
  const double g = oracle::leibniz_det(a.transpose() * a);
  std::vector<double> out;
  for (Mask m : oracle::weight_masks(static_cast<int>(a.rows()), static_cast<int>(a.cols()))) {
    const double det = oracle::leibniz_det(oracle::rows_of(a, m));
    out.push_back(det * det / g);
  }
  return out;
}

double tv(const std::vector<Subset>& samples, const std::vector<double>& probs, int n, int d) {
  std::vector<double> freq(probs.size(), 0.0);
  for (const auto& s : samples) freq[rank_subset(s, n, d)] += 1.0;
  double t = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) t += std::abs(freq[k] / samples.size() - probs[k]);
  return t / 2;
}

}  // namespace

TEST_CASE("exact distribution examples") {
  const auto id = exact_distribution(OrthonormalFrame::identity(3, 2).matrix());
  CHECK(id.prob(Subset::from_positions(3, {1, 2})) == 1.0);
  Matrix a(3, 2);
  a << 1, 0, 0, 0.6, 0, 0.8;
  const auto dist = exact_distribution(a);
  CHECK(dist.prob(Subset::from_positions(3, {1, 2})) == doctest::Approx(0.36));
  CHECK(dist.prob(Subset::from_positions(3, {1, 3})) == doctest::Approx(0.64));
  const auto scaled = exact_distribution(3 * a);
  for (std::size_t k = 0; k < dist.probs.size(); ++k) CHECK(std::abs(scaled.probs[k] - dist.probs[k]) <= 1e-15);
  Matrix bad(3, 2);
  bad << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(exact_distribution(bad), DegenerateInput);
}

TEST_CASE("property: exact distribution is invariant under column operations") {
  CounterRng rng(81, 0);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 6);
    const int d = 1 + static_cast<int>(rng.next_u64() % n);
    const Matrix a = random_gaussian(n, d, rng);
    const Matrix m = random_gaussian(d, d, rng);
    const auto p = exact_distribution(a);
    const auto q = exact_distribution(a * m);
    const auto want = oracle_probs(a);
    double sum = 0;
    for (std::size_t k = 0; k < want.size(); ++k) {
      REQUIRE(std::abs(p.probs[k] - want[k]) <= 1e-9);
      REQUIRE(std::abs(q.probs[k] - want[k]) <= 1e-9);
      sum += p.probs[k];
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("classical sampler") {
  const auto id = classical_dpp_sample(OrthonormalFrame::identity(5, 3), 200, 4);
  for (const auto& s : id) CHECK(s.to_string() == "1,2,3");
  CounterRng rng(82, 0);
  const Matrix x = oracle::random_frame(6, 2, rng);
  const auto samples = classical_dpp_sample(OrthonormalFrame(x), 100000, 17);
  CHECK(tv(samples, oracle_probs(x), 6, 2) <= 0.01);
  CHECK(classical_dpp_sample(OrthonormalFrame(x), 300, 5) == classical_dpp_sample(OrthonormalFrame(x), 300, 5));
  CHECK(classical_dpp_sample(OrthonormalFrame(x), 3000, 5) ==
        serial::classical_dpp_sample(OrthonormalFrame(x), 3000, 5));
  for (const auto& s : samples) REQUIRE(s.weight() == 2);
}

TEST_CASE("quantum sampler amplitudes") {
  const auto id = quantum_det_sample(OrthonormalFrame::identity(3, 2), 10, 1, LoaderMode::kLinear);
  CHECK(std::abs(id.amplitudes[0] - 1.0) <= 1e-10);
  CounterRng rng(83, 0);
  for (auto mode : {LoaderMode::kLinear, LoaderMode::kLog}) {
    const Matrix x = oracle::random_frame(6, 3, rng);
    const auto r = quantum_det_sample(OrthonormalFrame(x), 10, 1, mode);
    CHECK(r.amplitude_residual <= 1e-9);
    CHECK(oracle::sign_distance(r.amplitudes, oracle::minor_amplitudes(x)) <= 1e-9);
    CHECK(r.leakage <= 1e-20);
  }
}

TEST_CASE("property: loader products give determinant amplitudes") {
  CounterRng rng(84, 0);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const int d = 1 + static_cast<int>(rng.next_u64() % n);
    const Matrix x = oracle::random_frame(n, d, rng);
    const auto r = quantum_det_sample(OrthonormalFrame(x), 1, 1, t % 2 ? LoaderMode::kLog : LoaderMode::kLinear);
    REQUIRE(oracle::sign_distance(r.amplitudes, oracle::minor_amplitudes(x)) <= 1e-9);
    REQUIRE(r.leakage <= 1e-20);
  }
}

TEST_CASE("quantum sampler statistics and limits") {
  CounterRng rng(85, 0);
  const Matrix x = oracle::random_frame(6, 3, rng);
  const auto r = quantum_det_sample(OrthonormalFrame(x), 100000, 3, LoaderMode::kLog);
  CHECK(tv(r.samples, oracle_probs(x), 6, 3) <= 0.015);
  CHECK(quantum_det_sample(OrthonormalFrame(x), 50, 3, LoaderMode::kLog).samples ==
        quantum_det_sample(OrthonormalFrame(x), 50, 3, LoaderMode::kLog).samples);
  CHECK_THROWS_AS(quantum_det_sample(OrthonormalFrame::identity(15, 2), 1, 1, LoaderMode::kLinear),
                  ResourceLimit);
}

TEST_CASE("sampler report") {
  const auto rep = sampler_report(OrthonormalFrame::identity(4, 2).matrix(), 500, 2, LoaderMode::kLog);
  REQUIRE(rep.methods.size() == 3);
  for (const auto& m : rep.methods) {
    CHECK(m.tv_distance == 0.0);
    CHECK(m.counts.size() == 1);
    CHECK(m.p_value == 1.0);
  }
  CounterRng rng(86, 0);
  const Matrix a = random_gaussian(8, 3, rng);
  const auto big = sampler_report(a, 20000, 9, LoaderMode::kLog);
  for (const auto& m : big.methods) {
    CHECK(m.dof == 55);
    CHECK(m.p_value > 0.001);
  }
  const int loader = clifford_loader(Vector::Unit(8, 0), LoaderMode::kLog).depth();
  CHECK(big.loader_depth == loader);
  CHECK(big.circuit_depth <= 3 * loader);
  CHECK(big.circuit_depth >= 3 * loader - 4);
  const auto j = to_json(big);
  CHECK(j.contains("timing"));
  CHECK(j["methods"][0]["counts"].begin().key().find(',') != std::string::npos);
}

TEST_CASE("comparison flags draws outside the support") {
  const auto dist = exact_distribution(OrthonormalFrame::identity(3, 1).matrix());
  const auto st = compare_samples("x", {Subset::from_positions(3, {2})}, dist);
  CHECK(st.p_value == 0.0);
  CHECK(st.tv_distance == 1.0);
}
