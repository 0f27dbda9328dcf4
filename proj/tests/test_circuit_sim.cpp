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
#include "subspace/circuit.hpp"
#include "subspace/errors.hpp"
#include "subspace/random.hpp"
#include "subspace/simulator.hpp"

using namespace subspace;

namespace {

Circuit random_circuit(int n, int gates, CounterRng& rng, bool weight_preserving) {
  Circuit c(n);
  for (int g = 0; g < gates; ++g) {
    const int kinds = weight_preserving ? 4 : 6;
    const int kind = static_cast<int>(rng.next_u64() % kinds);
    const int a = 1 + static_cast<int>(rng.next_u64() % n);
    int b = 1 + static_cast<int>(rng.next_u64() % n);
    if (n > 1)
      while (b == a) b = 1 + static_cast<int>(rng.next_u64() % n);
    const double theta = (rng.uniform() - 0.5) * 8.0;
    if (n == 1 && kind != 2) {
      c.add(Gate::z(a));
      continue;
    }
    switch (kind) {
      case 0: c.add(Gate::rbs(a, b, theta)); break;
      case 1: c.add(Gate::fbs(a, b, theta)); break;
      case 2: c.add(Gate::z(a)); break;
      case 3: c.add(Gate::cz(a, b)); break;
      case 4: c.add(Gate::x(a)); break;
      default: c.add(Gate::cx(a, b)); break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("FBS lowering shapes") {
  const Circuit a = lower_fbs(Gate::fbs(1, 2, 0.3), 2);
  REQUIRE(a.gate_count() == 1);
  CHECK(a.gates()[0] == Gate::rbs(1, 2, 0.3));
  const Circuit b = lower_fbs(Gate::fbs(1, 3, 0.3), 3);
  REQUIRE(b.gate_count() == 3);
  CHECK(b.gates()[0].kind == GateKind::kCZ);
  CHECK(b.gates()[1] == Gate::rbs(1, 3, 0.3));
  CHECK(b.gates()[2].kind == GateKind::kCZ);
  CHECK(b.gates()[0] == Gate::cz(2, 1));
}

TEST_CASE("lowered FBS matches the definition densely") {
  CounterRng rng(41, 0);
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int t = 0; t < 3; ++t) {
          const double theta = (rng.uniform() - 0.5) * 10;
          const Matrix u = circuit_unitary(lower_fbs(Gate::fbs(i, j, theta), n));
          REQUIRE(oracle::max_abs_diff(u, oracle::fbs_definition(n, i, j, theta)) <= 1e-12);
        }
  Circuit direct(4);
  direct.add(Gate::fbs(1, 4, 0.7));
  CHECK(oracle::max_abs_diff(circuit_unitary(lower_fbs(direct)), circuit_unitary(direct)) <= 1e-12);
  CHECK(oracle::max_abs_diff(circuit_unitary(direct), oracle::fbs_definition(4, 1, 4, 0.7)) <= 1e-12);
}

TEST_CASE("property: lowered FBS depth is logarithmic") {
  for (int i = 1; i <= 32; ++i)
    for (int j = i + 1; j <= 32; ++j) {
      const int bound = 2 * static_cast<int>(std::ceil(std::log2(j - i))) + 3;
      const Circuit c = lower_fbs(Gate::fbs(i, j, 0.1), 32);
      REQUIRE(c.depth() <= bound);
      if (j - i > 2) {
        REQUIRE(c.gate_count(GateKind::kCX) == static_cast<std::size_t>(2 * (j - i - 2)));
      }
    }
}

TEST_CASE("RBS dense matrix") {
  Circuit c(2);
  CHECK(oracle::max_abs_diff(circuit_unitary(c), Matrix::Identity(4, 4)) == 0.0);
  c.add(Gate::rbs(1, 2, 0.4));
  Matrix expect = Matrix::Identity(4, 4);
  // Basis order by mask: 0, {1}, {2}, {1,2}.
  expect(1, 1) = expect(2, 2) = std::cos(0.4);
  expect(2, 1) = std::sin(0.4);
  expect(1, 2) = -std::sin(0.4);
  CHECK(oracle::max_abs_diff(circuit_unitary(c), expect) <= 1e-15);
}

TEST_CASE("reversed rotation indices negate the angle") {
  CHECK(Gate::rbs(3, 1, 0.5) == Gate::rbs(1, 3, -0.5));
  Circuit a(3), b(3);
  a.add(Gate{GateKind::kFBS, 3, 1, 0.5});
  b.add(Gate::fbs(1, 3, -0.5));
  CHECK(a == b);
}

TEST_CASE("depth and counts") {
  Circuit c(4);
  CHECK(c.depth() == 0);
  c.add(Gate::rbs(1, 2, 0.1)).add(Gate::rbs(3, 4, 0.1)).add(Gate::rbs(2, 3, 0.1)).add(Gate::x(1));
  CHECK(c.depth() == 2);
  CHECK(c.gate_count() == 4);
  CHECK(c.gate_count(GateKind::kRBS) == 3);
  CHECK(c.gate_count(GateKind::kX) == 1);
  CHECK_THROWS_AS(c.add(Gate::x(5)), InvalidArgument);
  CHECK_THROWS_AS(Gate::cz(2, 2), InvalidArgument);
}

TEST_CASE("controlled-X acts on the target") {
  Circuit c(2);
  c.add(Gate::cx(2, 1));
  StateVector s = StateVector::basis(2, 0b10);
  s.apply(c);
  CHECK(s.amplitude(0b11) == 1.0);
}

TEST_CASE("inverse circuit undoes the circuit") {
  CounterRng rng(42, 0);
  const Circuit c = random_circuit(4, 30, rng, false);
  Circuit both = c;
  both.append(c.inverse());
  CHECK(oracle::max_abs_diff(circuit_unitary(both), Matrix::Identity(16, 16)) <= 1e-12);
}

TEST_CASE("property: serialization round trip is exact") {
  CounterRng rng(43, 0);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 10);
    Circuit c = random_circuit(n, 25, rng, false);
    c.set_label(t % 2 ? "x" : "");
    const Circuit back = parse_circuit(serialize(c));
    REQUIRE(back == c);
  }
  CHECK_THROWS_AS(parse_circuit("{\"n\":2,\"gates\":[{\"g\":\"FOO\",\"q\":[1]}]}"), InvalidArgument);
  CHECK_THROWS_AS(parse_circuit("not json"), InvalidArgument);
}

TEST_CASE("FBS and RBS agree on single excitations") {
  for (int n = 2; n <= 7; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const Matrix f = oracle::fbs_definition(n, i, j, 0.9);
        const Matrix r = oracle::fbs_definition(n, i, j, 0.9, false);
        for (int p = 1; p <= n; ++p) {
          const auto col = Eigen::Index{1} << (p - 1);
          REQUIRE(f.col(col) == r.col(col));
        }
      }
}

TEST_CASE("sector state validation") {
  CHECK_THROWS_AS(SectorState(3, 2, {1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(SectorState(3, 2, {1.0, 1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), InvalidArgument);
}

TEST_CASE("FBS on a single excitation follows the rotation matrix") {
  const double t = 0.3;
  const SectorState out =
      apply_gate_sector(SectorState::basis(Subset::from_positions(2, {1})), Gate::fbs(1, 2, t));
  CHECK(out.amplitudes()[0] == doctest::Approx(std::cos(t)));
  CHECK(out.amplitudes()[1] == doctest::Approx(std::sin(t)));
}

TEST_CASE("FBS across an occupied qubit picks up the parity sign") {
  const double t = 0.3;
  const Subset s12 = Subset::from_positions(3, {1, 2});
  const SectorState out = apply_gate_sector(SectorState::basis(s12), Gate::fbs(1, 3, t));
  CHECK(out.amplitude(s12) == doctest::Approx(std::cos(t)));
  CHECK(out.amplitude(Subset::from_positions(3, {2, 3})) == doctest::Approx(-std::sin(t)));
  CHECK(out.amplitude(Subset::from_positions(3, {1, 3})) == 0.0);
  const Matrix dense = oracle::fbs_definition(3, 1, 3, t);
  CHECK(out.amplitude(Subset::from_positions(3, {2, 3})) == doctest::Approx(dense(0b110, 0b011)));
}

TEST_CASE("rotation inside an occupied block is trivial") {
  const Subset s = Subset::first(5, 3);
  const SectorState out = apply_gate_sector(SectorState::basis(s), Gate::fbs(1, 3, 1.1));
  CHECK(out.amplitude(s) == 1.0);
}

TEST_CASE("weight-changing gates are rejected in a sector") {
  const SectorState s = SectorState::basis(Subset::first(3, 1));
  CHECK_THROWS_AS(apply_gate_sector(s, Gate::x(1)), InvalidOperation);
  CHECK_THROWS_AS(apply_gate_sector(s, Gate::cx(1, 2)), InvalidOperation);
}

TEST_CASE("reference subspace states") {
  const SectorState id = prepare_subspace_state_reference(OrthonormalFrame::identity(4, 2));
  CHECK(id.amplitude(Subset::first(4, 2)) == 1.0);
  CHECK(id.norm() == 1.0);
  Matrix x(3, 2);
  x << 1, 0, 0, 0.6, 0, 0.8;
  const SectorState s = prepare_subspace_state_reference(OrthonormalFrame(x));
  CHECK(s.amplitude(Subset::from_positions(3, {1, 2})) == doctest::Approx(0.6));
  CHECK(s.amplitude(Subset::from_positions(3, {1, 3})) == doctest::Approx(0.8));
  CHECK(s.amplitude(Subset::from_positions(3, {2, 3})) == 0.0);
  CounterRng rng(44, 0);
  const Matrix f = oracle::random_frame(6, 3, rng);
  const SectorState r = prepare_subspace_state_reference(OrthonormalFrame(f));
  CHECK(std::abs(r.norm() - 1.0) <= 1e-10);
  const auto expect = oracle::minor_amplitudes(f);
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(r.amplitudes()[k] - expect[k]) < 1e-12);
}

TEST_CASE("measurement sampling") {
  const auto det = measure_samples(SectorState::basis(Subset::from_positions(3, {1, 2})), 100, 5);
  REQUIRE(det.size() == 100);
  for (const auto& s : det) CHECK(s.to_string() == "1,2");

  Matrix x(3, 2);
  x << 1, 0, 0, 0.6, 0, 0.8;
  const SectorState st = prepare_subspace_state_reference(OrthonormalFrame(x));
  const auto samples = measure_samples(st, 1000000, 99);
  std::size_t hits = 0;
  for (const auto& s : samples) hits += s.mask() == 0b011;
  CHECK(static_cast<double>(hits) / 1e6 == doctest::Approx(0.36).epsilon(0.002 / 0.36));
  CHECK(measure_samples(st, 500, 3) == measure_samples(st, 500, 3));
  CHECK_THROWS_AS(measure_samples(st, 0, 3), InvalidArgument);
}

TEST_CASE("parallel and serial kernels agree bit for bit") {
  CounterRng rng(45, 0);
  const std::vector<double> cdf = kernels::squared_cdf(std::vector<double>{0.6, 0.0, 0.8});
  CHECK(kernels::sample_indices(cdf, 20000, 9) == kernels::serial::sample_indices(cdf, 20000, 9));
  const int n = 13;
  std::vector<double> a(std::size_t{1} << n);
  for (double& v : a) v = rng.normal();
  std::vector<double> b = a;
  const Circuit c = random_circuit(n, 40, rng, false);
  for (const Gate& g : c.gates()) {
    kernels::apply_dense(a, n, g);
    kernels::serial::apply_dense(b, n, g);
  }
  CHECK(a == b);
  const kernels::SectorIndex idx(12, 5);
  std::vector<double> in(idx.size()), o1(idx.size()), o2(idx.size());
  for (double& v : in) v = rng.normal();
  const Circuit sc = random_circuit(12, 20, rng, true);
  for (const Gate& g : sc.gates()) {
    kernels::apply_sector(in, o1, idx, g);
    kernels::serial::apply_sector(in, o2, idx, g);
    REQUIRE(o1 == o2);
  }
}

TEST_CASE("Plucker residuals") {
  CounterRng rng(46, 0);
  for (int d = 2; d <= 4; ++d) {
    const SectorState s = prepare_subspace_state_reference(OrthonormalFrame(oracle::random_frame(7, d, rng)));
    CHECK(check_plucker(s) <= 1e-10);
  }
  const double h = std::sqrt(0.5);
  // Colex order for n=4, d=2: 12, 13, 23, 14, 24, 34.
  const SectorState ent(4, 2, {h, 0, 0, 0, 0, h});
  CHECK(check_plucker(ent) == doctest::Approx(0.5));
  CHECK(check_plucker(SectorState::basis(Subset::from_positions(5, {2, 4}))) == 0.0);
  CHECK_THROWS_AS(check_plucker(SectorState::basis(Subset::first(3, 1))), InvalidArgument);
}

TEST_CASE("FBS applies a Givens rotation to subspace states") {
  CounterRng rng(47, 0);
  const OrthonormalFrame x(oracle::random_frame(4, 2, rng));
  CHECK(apply_givens_theorem_check(x, 2, 3, 0.0) == 0.0);
  for (int t = 0; t < 10; ++t) {
    CHECK(apply_givens_theorem_check(x, 1, 4, (rng.uniform() - 0.5) * 10) <= 1e-11);
  }
  const OrthonormalFrame full(oracle::random_orthogonal(5, rng));
  CHECK(apply_givens_theorem_check(full, 1, 5, 0.8) <= 1e-14);
  const SectorState ones = SectorState::basis(Subset::first(5, 5));
  CHECK(apply_gate_sector(ones, Gate::fbs(2, 4, 0.8)).amplitudes()[0] == 1.0);
}

TEST_CASE("property: Givens action for every n <= 8 and d") {
  CounterRng rng(48, 0);
  for (int n = 2; n <= 8; ++n)
    for (int d = 1; d <= n; ++d) {
      const OrthonormalFrame x(oracle::random_frame(n, d, rng));
      const int i = 1 + static_cast<int>(rng.next_u64() % n);
      int j = 1 + static_cast<int>(rng.next_u64() % n);
      while (j == i) j = 1 + static_cast<int>(rng.next_u64() % n);
      // Independent rotation: explicit Givens matrix times X, minors by Leibniz.
      const double theta = (rng.uniform() - 0.5) * 7;
      const Matrix gx = oracle::givens(n, std::min(i, j), std::max(i, j), i < j ? theta : -theta) *
                        x.matrix();
      const SectorState got =
          apply_gate_sector(prepare_subspace_state_reference(x), Gate::fbs(i, j, theta));
      const auto want = oracle::minor_amplitudes(gx);
      double err = 0;
      for (std::size_t k = 0; k < want.size(); ++k) err += std::pow(got.amplitudes()[k] - want[k], 2);
      REQUIRE(std::sqrt(err) <= 1e-10);
    }
}

TEST_CASE("property: sector and dense simulation agree") {
  CounterRng rng(49, 0);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);
    const int d = static_cast<int>(rng.next_u64() % (n + 1));
    const Circuit c = random_circuit(n, 15, rng, true);
    std::vector<double> amps(binomial(n, d));
    for (double& a : amps) a = rng.normal();
    double nrm = 0;
    for (double a : amps) nrm += a * a;
    for (double& a : amps) a /= std::sqrt(nrm);
    SectorState s(n, d, amps);
    StateVector v = embed(s);
    for (const Gate& g : c.gates()) {
      const double before = s.norm();
      s = apply_gate_sector(s, g);
      REQUIRE(std::abs(s.norm() - before) < 1e-13);
    }
    v.apply(c);
    REQUIRE(v.weight_leakage(d) == 0.0);
    const SectorState back = restrict_to_sector(v, d);
    for (std::size_t k = 0; k < back.size(); ++k) REQUIRE(std::abs(back.amplitudes()[k] - s.amplitudes()[k]) <= 1e-11);
  }
}

TEST_CASE("dense unitary size cap") {
  Circuit c(13);
  CHECK_THROWS_AS(circuit_unitary(c), ResourceLimit);
}
