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

#include "verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "subspace/clifford.hpp"
#include "subspace/compound_sve.hpp"
#include "subspace/det_sampling.hpp"
#include "subspace/errors.hpp"
#include "subspace/givens.hpp"
#include "subspace/random.hpp"
#include "subspace/simulator.hpp"
#include "subspace/tda.hpp"

namespace subspace::cli {

namespace {

Check make(std::string suite, std::string name, std::string claim, double value, double tol,
           bool at_least = false) {
  Check c{std::move(suite), std::move(name), std::move(claim), value, tol, at_least, false};
  c.pass = at_least ? value >= tol : value <= tol;
  return c;
}

Matrix frame(int n, int d, CounterRng& rng) { return random_orthogonal(n, rng).leftCols(d); }

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix with_signs(Matrix u, const std::vector<int>& signs) {
  for (std::size_t c = 0; c < signs.size(); ++c) u.col(static_cast<Eigen::Index>(c)) *= signs[c];
  return u;
}

Matrix columns(const Matrix& u, const Subset& s) {
  Matrix out(u.rows(), s.weight());
  Eigen::Index c = 0;
  for (int p : s.positions()) out.col(c++) = u.col(p - 1);
  return out;
}

using Suite = std::function<void(std::vector<Check>&, int, std::uint64_t)>;

void fbs_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  double worst = 0.0;
  CounterRng rng(seed, 0);
  for (int n = 2; n <= std::min(max_n, 8); ++n)
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int t = 0; t < 5; ++t) {
          Circuit c(n);
          c.add(Gate::fbs(i, j, (2 * rng.uniform() - 1) * std::numbers::pi));
          worst = std::max(worst, max_diff(circuit_unitary(lower_fbs(c)), circuit_unitary(c)));
        }
  out.push_back(make("fbs", "lowering", "lowered FBS circuit equals the FBS matrix", worst, 1e-12));
}

void givens_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  double worst = 0.0;
  CounterRng rng(seed, 0);
  const int top = std::max(2, std::min(max_n, 8));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % (top - 1);
    const int d = 1 + static_cast<int>(rng.uniform() * n) % n;
    const int i = 1 + static_cast<int>(rng.uniform() * (n - 1)) % (n - 1);
    const int j = i + 1 + static_cast<int>(rng.uniform() * (n - i)) % (n - i);
    const double theta = (2 * rng.uniform() - 1) * std::numbers::pi;
    worst = std::max(worst, apply_givens_theorem_check(OrthonormalFrame(frame(n, d, rng)), i, j, theta));
  }
  out.push_back(make("givens", "fbs-rotates-frame", "FBS on |Col(X)> gives |Col(G X)>", worst, 1e-10));
}

void circuits_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::map<std::string, double> worst{{"pyramid", 0.0}, {"csd", 0.0}};
  for (int n = 2; n <= std::min(max_n, 6); ++n) {
    const Matrix u = random_orthogonal(n, rng);
    for (auto method : {GivensMethod::kPyramid, GivensMethod::kSineCosine}) {
      const auto dec = decompose(u, method);
      for (Mask m = 1; m < (Mask{1} << n); ++m) {
        const Subset s(m, n);
        const auto got = prepare_via_givens(dec, s);
        const auto want = prepare_subspace_state_reference(OrthonormalFrame(columns(u, s)));
        double& w = worst[method == GivensMethod::kPyramid ? "pyramid" : "csd"];
        w = std::max(w, distance_up_to_sign(got, want));
      }
    }
  }
  for (const auto& [name, w] : worst)
    out.push_back(make("circuits", name + "-amplitudes", "Givens circuit on |S> has amplitudes det((U_S)_T)", w, 1e-9));
}

void pyramid_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  int count_gap = 0, depth_excess = -1000;
  for (int n = 2; n <= std::max(2, std::min(max_n, 10)); ++n)
    for (int d = 1; d <= n; ++d) {
      const auto dec = pyramid_decompose(OrthonormalFrame(frame(n, d, rng)));
      const int expect = n * d - d * (d + 1) / 2;
      count_gap = std::max(count_gap, std::abs(static_cast<int>(dec.rotations.size()) - expect));
      depth_excess = std::max(depth_excess, dec.to_circuit().depth() - (n + d - 2));
    }
  out.push_back(make("pyramid", "rotation-count", "generic frame needs nd - d(d+1)/2 rotations", count_gap, 0));
  out.push_back(make("pyramid", "depth", "pyramid depth is at most n + d - 2", std::max(0, depth_excess), 0));
}

void loader_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  double lin = 0.0, log = 0.0, action = 0.0;
  int depth_gap = 0;
  for (int n = 2; n <= std::max(2, std::min(max_n, 8)); n *= 2) {
    for (int t = 0; t < 5; ++t) {
      const Vector x = random_unit_vector(n, rng);
      const Matrix g = gamma_dense(x).matrix;
      lin = std::max(lin, max_diff(circuit_unitary(linear_loader(x)), g));
      log = std::max(log, max_diff(circuit_unitary(log_loader(x)), g));
      const int d = 1 + t % n;
      for (auto mode : {LoaderMode::kLinear, LoaderMode::kLog})
        action = std::max(action, loader_action_check(x, OrthonormalFrame(frame(n, d, rng)), mode).residual());
    }
    if (n >= 4) {
      const int expect = 4 * (std::bit_width(static_cast<unsigned>(n)) - 2);
      depth_gap = std::max(depth_gap, std::abs(log_unloader(Vector::Constant(n, 1 / std::sqrt(n))).depth() - expect));
    }
  }
  out.push_back(make("loader", "linear-gamma", "linear loader unitary equals Gamma(x)", lin, 1e-11));
  out.push_back(make("loader", "log-gamma", "log loader unitary equals Gamma(x)", log, 1e-11));
  out.push_back(make("loader", "log-unloader-depth", "unloading half has depth 4(log2 n - 1)", depth_gap, 0));
  out.push_back(make("loader", "subspace-action", "C(x)|Col(Y)> splits into weights d-1 and d+1", action, 1e-9));
}

void det_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  double amp = 0.0, leak = 0.0, path = 0.0, plucker = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % std::max(1, std::min(max_n, 8) - 1);
    const int d = 1 + trial % n;
    const OrthonormalFrame x(frame(n, d, rng));
    for (auto mode : {LoaderMode::kLinear, LoaderMode::kLog}) {
      const auto q = quantum_det_sample(x, 1, derive_seed(seed, trial), mode);
      amp = std::max(amp, q.amplitude_residual);
      leak = std::max(leak, q.leakage);
    }
    if (d >= 2) plucker = std::max(plucker, check_plucker(prepare_subspace_state_reference(x)));
    if (n <= 6) {
      std::vector<Vector> xs;
      for (int k = 0; k < std::min(d + 1, 3); ++k) xs.push_back(random_unit_vector(n, rng));
      const Subset t(static_cast<Mask>(rng.next_u64()) & ((Mask{1} << n) - 1), n);
      const Subset s(static_cast<Mask>(rng.next_u64()) & ((Mask{1} << n) - 1), n);
      path = std::max(path, std::abs(loader_amplitude_path_sum(xs, t, s) - loader_amplitude_dense(xs, t, s)));
    }
  }
  out.push_back(make("det", "loader-product-amplitudes", "product of column loaders has amplitudes det(A_S)", amp, 1e-9));
  out.push_back(make("det", "weight-leakage", "no mass outside the weight-d sector", leak, 1e-18));
  out.push_back(make("det", "path-sum", "signed path sum equals the dense loader product", path, 1e-10));
  out.push_back(make("det", "plucker", "subspace states satisfy the Plucker relations", plucker, 1e-10));
}

void sampling_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  const int n = std::clamp(max_n, 3, 6);
  const Matrix a = frame(n, 2, rng);
  const auto r = sampler_report(a, 20000, derive_seed(seed, 1), LoaderMode::kLinear);
  for (const auto& m : r.methods) {
    out.push_back(make("sampling", m.method + "-tv", "empirical TV distance to |det(A_S)|^2", m.tv_distance, 0.03));
    out.push_back(make("sampling", m.method + "-chi2", "chi-square p-value", m.p_value, 1e-3, true));
  }
}

void compound_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  double direct = 0.0, mult = 0.0, spectrum = 0.0, angles = 0.0, block = 0.0;
  for (int n = 2; n <= std::min(max_n, 6); ++n) {
    const Matrix u = random_orthogonal(n, rng);
    for (auto method : {GivensMethod::kPyramid, GivensMethod::kSineCosine}) {
      if (method == GivensMethod::kSineCosine && !std::has_single_bit(static_cast<unsigned>(n))) continue;
      const auto dec = decompose(u, method);
      const Circuit c = dec.to_circuit();
      for (int k = 1; k <= n; ++k)
        direct = std::max(direct, max_diff(sector_unitary_from_circuit(c, k).matrix,
                                           compound(with_signs(u, dec.signs), k).entries));
    }
    const Matrix a = random_gaussian(n, n, rng), b = random_gaussian(n, n, rng);
    for (int k = 1; k <= n; ++k) {
      const Matrix lhs = compound(a * b, k).entries;
      mult = std::max(mult, max_diff(lhs, compound(a, k).entries * compound(b, k).entries) / (1.0 + lhs.norm()));
      spectrum = std::max(spectrum, compound_spectrum_check(u, k));
    }
    const Matrix q = random_orthogonal(n, rng);
    const Subset rows = Subset::first(n, n - 1);
    const Subset cols(((Mask{1} << n) - 1) & ~Mask{1}, n);
    for (int k = 1; k < n; ++k) {
      angles = std::max(angles, principal_angles_oracle(u, q, rows, cols, k).cross_check_residual);
      // The (I_k, J_k) corner of (U^T Q)^k is the compound of the corner.
      const Matrix m = u.transpose() * q;
      const Matrix mk = compound(m, k).entries;
      const Matrix corner = compound(m.topLeftCorner(n - 1, n - 1), k).entries;
      block = std::max(block, max_diff(mk.topLeftCorner(corner.rows(), corner.cols()), corner));
    }
  }
  out.push_back(make("compound", "direct-sum", "Givens circuit acts as compound(U, k) on each sector", direct, 1e-9));
  out.push_back(make("compound", "multiplicativity", "(AB)^k = A^k B^k (relative)", mult, 1e-10));
  out.push_back(make("compound", "eigenstructure", "U^k |Col(V_S)> = e^{i sum theta} |Col(V_S)>", spectrum, 1e-8));
  out.push_back(make("compound", "principal-angles", "cos theta_S = prod sigma_i matches compound corners", angles, 1e-8));
  out.push_back(make("compound", "block-encoding", "corner of the compound is the compound of the corner", block, 1e-9));
}

void sve_suite(std::vector<Check>& out, int, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  const Vector sigma = Eigen::Vector4d(0.95, 0.7, 0.4, 0.15);
  const Matrix a = random_orthogonal(4, rng) * sigma.asDiagonal() * random_orthogonal(4, rng).transpose();
  const SveProblem problem(block_embedding(a), 4, 2);
  const int bits = 8;
  const double tol = 2 * 2 * std::numbers::pi / (1 << bits);
  double worst = 1.0;
  for (Mask m : enumerate_masks(4, 2)) {
    const Subset s(m, 4);
    const auto res = subspace_sve(problem, {s}, {1.0}, bits, 100, derive_seed(seed, m));
    int good = 0;
    for (const auto& e : res.estimates)
      if (std::abs(std::cos(e.theta) - problem.product_sigma(s)) <= tol) ++good;
    worst = std::min(worst, good / 100.0);
  }
  out.push_back(make("sve", "success-rate", "single-shot |cos theta - prod sigma| within 2 * 2pi/2^t", worst, 0.8, true));
}

void tda_suite(std::vector<Check>& out, int max_n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  int dd = 0;
  double diag = 0.0, embed = 0.0, square = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % std::max(1, std::min(max_n, 10));
    std::vector<Mask> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(rng.next_u64() & rng.next_u64() & ((Mask{1} << n) - 1));
    const auto c = SimplicialComplex::closure(n, gens);
    const IntSparse d = boundary_matrix(c);
    const IntSparse d2 = d * d;
    for (Eigen::Index k = 0; k < d2.outerSize(); ++k)
      for (IntSparse::InnerIterator it(d2, k); it; ++it) dd = std::max(dd, std::abs(it.value()));
    const auto rep = laplacian_check(c);
    diag = std::max(diag, rep.diagonal_residual);
    square = std::max(square, rep.square_residual);
    embed = std::max(embed, embedding_check(c));
  }
  auto mismatch = [](const std::vector<int>& a, const std::vector<int>& b) { return a == b ? 0.0 : 1.0; };
  const auto hollow = SimplicialComplex::closure(3, {0b011, 0b110, 0b101});
  double betti = mismatch(betti_numbers(hollow).betti, {1, 1});
  betti += mismatch(betti_numbers(complete_complex(3)).betti, {1, 0, 0});
  double enc = 0.0;
  for (int n = 2; n <= std::max(2, std::min(max_n, 8)); n *= 2) enc = std::max(enc, loader_block_encoding_depth(n).unitary_residual);
  out.push_back(make("tda", "boundary-squared", "d^2 = 0 in integer arithmetic", dd, 0));
  out.push_back(make("tda", "laplacian-diagonal", "Delta(x,x) = (p+1) + ext_p(x)", diag, 0));
  out.push_back(make("tda", "dirac-square", "D^2 = d d* + d* d", square, 0));
  out.push_back(make("tda", "embedding", "D(C) is a submatrix of sqrt(n) Gamma(1/sqrt(n))", embed, 1e-12));
  out.push_back(make("tda", "betti", "hollow triangle (1,1), filled triangle (1,0,0)", betti, 0));
  out.push_back(make("tda", "uniform-loader", "uniform log loader equals the Dirac unitary", enc, 1e-11));
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all = {
      {"fbs", fbs_suite},         {"givens", givens_suite}, {"circuits", circuits_suite},
      {"pyramid", pyramid_suite}, {"loader", loader_suite}, {"det", det_suite},
      {"sampling", sampling_suite}, {"compound", compound_suite}, {"sve", sve_suite},
      {"tda", tda_suite},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suites()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<Check> run_suites(const std::string& suite, int max_n, std::uint64_t seed) {
  if (max_n < 2) throw InvalidArgument("--max-n must be at least 2");
  std::vector<Check> out;
  bool found = false;
  std::uint64_t tag = 0;
  for (const auto& [name, fn] : suites()) {
    ++tag;
    if (suite != "all" && suite != name) continue;
    found = true;
    fn(out, max_n, derive_seed(seed, tag));
  }
  if (!found) throw InvalidArgument("unknown suite '" + suite + "'");
  return out;
}

nlohmann::ordered_json to_json(const Check& c) {
  return {{"suite", c.suite}, {"name", c.name},           {"claim", c.claim},
          {"value", c.value}, {"tolerance", c.tolerance}, {"comparison", c.at_least ? ">=" : "<="},
          {"pass", c.pass}};
}

std::string format_table(const std::vector<Check>& checks) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %-26s %-6s %12s %3s %-10s\n", "suite", "check", "result", "value", "", "tolerance");
  os << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-9s %-26s %-6s %12.3e %3s %-10.3e\n", c.suite.c_str(), c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.value, c.at_least ? ">=" : "<=", c.tolerance);
    os << line;
  }
  return os.str();
}

}  // namespace subspace::cli
