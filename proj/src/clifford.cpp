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

#include "subspace/clifford.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "subspace/errors.hpp"
#include "subspace/simulator.hpp"

namespace subspace {

namespace {

constexpr double kUnitTolerance = 1e-10;

void require_unit(const Vector& x) {
  if (x.size() < 1) throw InvalidArgument("loader vector is empty");
  if (x.size() > kMaxPositions) throw InvalidArgument("loader vector longer than 63");
  if (!(std::abs(x.norm() - 1.0) <= kUnitTolerance)) {
    throw InvalidArgument("loader vector must have unit norm, got " + std::to_string(x.norm()));
  }
}

bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

// Gamma(x) applied to a dense amplitude vector.
std::vector<double> apply_gamma(const std::vector<double>& in, const Vector& x) {
  std::vector<double> out(in.size(), 0.0);
  for (Mask m = 0; m < in.size(); ++m) {
    if (in[m] == 0.0) continue;
    for (int i = 1; i <= x.size(); ++i) {
      const double sign = below_parity(m, i) ? -1.0 : 1.0;
      out[m ^ (Mask{1} << (i - 1))] += sign * x(i - 1) * in[m];
    }
  }
  return out;
}

// A half with zero weight still gets a (trivial) network so that the gate
// layout does not depend on the data.
Vector unit_or_first(const Vector& v) {
  const double nrm = v.norm();
  if (nrm > 0.0) return v / nrm;
  Vector e = Vector::Zero(v.size());
  e(0) = 1.0;
  return e;
}

// Appends the unloading network for the block of qubits offset+1..offset+m.
// With `parity`, qubit offset+2 ends up holding the parity of the block's
// qubits 2..m.
void build_unloader(Circuit& c, const Vector& v, int offset, bool parity) {
  const auto m = static_cast<int>(v.size());
  if (m == 1) return;
  if (m == 2) {
    const Vector u = unit_or_first(v);
    c.add(Gate::rbs(offset + 1, offset + 2, -std::atan2(u(1), u(0))));
    return;
  }
  const int h = m / 2;
  const Vector top = v.head(h);
  const Vector bottom = v.tail(h);
  const double theta0 = std::atan2(bottom.norm(), top.norm());
  build_unloader(c, unit_or_first(top), offset, true);
  build_unloader(c, unit_or_first(bottom), offset + h, parity);
  // FBS between the block heads, using the parity kept on qubit offset+2.
  c.add(Gate::cz(offset + 2, offset + 1));
  c.add(Gate::rbs(offset + 1, offset + h + 1, -theta0));
  c.add(Gate::cz(offset + 2, offset + 1));
  if (parity) {
    c.add(Gate::cx(offset + h + 2, offset + h + 1));
    c.add(Gate::cx(offset + h + 1, offset + 2));
  }
}

// Single-qubit case: Gamma(x) = x_1 X with x_1 = +-1.
Circuit one_qubit_loader(const Vector& x) {
  Circuit c(1, "clifford-loader");
  if (x(0) < 0.0) c.add(Gate::z(1));
  c.add(Gate::x(1));
  if (x(0) < 0.0) c.add(Gate::z(1));
  return c;
}

double signed_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    plus += (a[k] - b[k]) * (a[k] - b[k]);
    minus += (a[k] + b[k]) * (a[k] + b[k]);
  }
  return std::sqrt(std::min(plus, minus));
}

// Amplitudes of `amps` on weight-w masks of the first n qubits, colex order.
std::vector<double> weight_slice(const std::vector<double>& amps, int n, int w) {
  std::vector<double> out;
  if (w < 0 || w > n) return out;
  for (Mask m : enumerate_masks(n, w)) out.push_back(amps[m]);
  return out;
}

}  // namespace

GammaOperator gamma_dense(const Vector& x) {
  require_unit(x);
  const auto n = static_cast<int>(x.size());
  if (n > limits().unitary_qubits) {
    throw ResourceLimit("dense Gamma limited to " + std::to_string(limits().unitary_qubits) +
                        " qubits");
  }
  const auto dim = Eigen::Index{1} << n;
  GammaOperator g{n, Matrix::Zero(dim, dim)};
  for (Mask m = 0; m < static_cast<Mask>(dim); ++m)
    for (int i = 1; i <= n; ++i) {
      const double sign = below_parity(m, i) ? -1.0 : 1.0;
      g.matrix(static_cast<Eigen::Index>(m ^ (Mask{1} << (i - 1))), static_cast<Eigen::Index>(m)) =
          sign * x(i - 1);
    }
  return g;
}

Circuit linear_loader(const Vector& x) {
  require_unit(x);
  const auto n = static_cast<int>(x.size());
  if (n == 1) return one_qubit_loader(x);
  const auto angles = spherical_angles(x).thetas;
  Circuit d(n);
  for (int j = 1; j < n; ++j) d.add(Gate::rbs(j, j + 1, angles[j - 1]));
  Circuit c = d.inverse();
  c.set_label("clifford-loader-linear");
  c.add(Gate::x(1));
  c.append(d);
  return c;
}

Circuit log_unloader(const Vector& x) {
  require_unit(x);
  if (!is_power_of_two(x.size())) {
    throw InvalidArgument("log-depth loader needs n a power of 2, got " + std::to_string(x.size()));
  }
  Circuit c(static_cast<int>(x.size()), "log-unloader");
  build_unloader(c, x, 0, false);
  return c;
}

Circuit log_loader(const Vector& x) {
  if (x.size() == 1) {
    require_unit(x);
    return one_qubit_loader(x);
  }
  const Circuit l = log_unloader(x);
  Circuit c(l.n(), "clifford-loader-log");
  c.append(l);
  c.add(Gate::x(1));
  c.append(l.inverse());
  return c;
}

LoaderMode parse_loader_mode(std::string_view name) {
  if (name == "linear") return LoaderMode::kLinear;
  if (name == "log") return LoaderMode::kLog;
  throw InvalidArgument("unknown loader mode '" + std::string(name) + "'");
}

std::string_view loader_mode_name(LoaderMode mode) {
  return mode == LoaderMode::kLinear ? "linear" : "log";
}

int padded_size(int n) {
  if (n < 1) throw InvalidArgument("size must be positive");
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

Circuit clifford_loader(const Vector& x, LoaderMode mode) {
  if (mode == LoaderMode::kLinear) return linear_loader(x);
  const int p = padded_size(static_cast<int>(x.size()));
  if (p > kMaxPositions) throw InvalidArgument("padded loader longer than 63");
  Vector padded = Vector::Zero(p);
  padded.head(x.size()) = x;
  return log_loader(padded);
}

double LoaderActionReport::residual() const {
  return std::max({lower_residual, upper_residual, std::sqrt(stray_mass)});
}

LoaderActionReport loader_action_check(const Vector& x, const OrthonormalFrame& y, LoaderMode mode) {
  require_unit(x);
  const int n = y.n();
  const int d = y.d();
  if (x.size() != n) throw InvalidArgument("vector and frame sizes differ");
  const Circuit c = clifford_loader(x, mode);
  const int q = c.n();

  const SectorState input = prepare_subspace_state_reference(y);
  std::vector<double> amps(std::size_t{1} << q, 0.0);
  const auto& masks = input.index().masks;
  for (std::size_t k = 0; k < masks.size(); ++k) amps[masks[k]] = input.amplitudes()[k];
  StateVector state(q, std::move(amps));
  state.apply(c);

  LoaderActionReport r;
  const Matrix& ym = y.matrix();
  const Vector par = ym * (ym.transpose() * x);
  const Vector perp = x - par;
  r.cos_theta = par.norm();
  r.sin_theta = perp.norm();

  const auto lower = weight_slice(state.amplitudes(), n, d - 1);
  const auto upper = weight_slice(state.amplitudes(), n, d + 1);
  for (Mask m = 0; m < state.amplitudes().size(); ++m) {
    const int w = std::popcount(m);
    if (w != d - 1 && w != d + 1) r.stray_mass += state.amplitudes()[m] * state.amplitudes()[m];
  }
  for (double a : lower) r.lower_norm += a * a;
  for (double a : upper) r.upper_norm += a * a;
  r.lower_norm = std::sqrt(r.lower_norm);
  r.upper_norm = std::sqrt(r.upper_norm);

  constexpr double kTiny = 1e-12;
  std::vector<double> want_lower(lower.size(), 0.0);
  if (r.cos_theta > kTiny) {
    if (d == 1) {
      want_lower[0] = r.cos_theta;
    } else {
      // Y' spans the part of Col(Y) orthogonal to the projection of x.
      const Vector xp = par / r.cos_theta;
      const Matrix rest = ym - xp * (xp.transpose() * ym);
      Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
      const SectorState s =
          prepare_subspace_state_reference(OrthonormalFrame(svd.matrixU().leftCols(d - 1)));
      for (std::size_t k = 0; k < want_lower.size(); ++k) want_lower[k] = r.cos_theta * s.amplitudes()[k];
    }
  }
  std::vector<double> want_upper(upper.size(), 0.0);
  if (r.sin_theta > kTiny && d < n) {
    Matrix ext(n, d + 1);
    ext << ym, perp / r.sin_theta;
    const SectorState s = prepare_subspace_state_reference(OrthonormalFrame(ext));
    for (std::size_t k = 0; k < want_upper.size(); ++k) want_upper[k] = r.sin_theta * s.amplitudes()[k];
  }
  r.lower_residual = signed_distance(lower, want_lower);
  r.upper_residual = signed_distance(upper, want_upper);
  return r;
}

double loader_amplitude_path_sum(const std::vector<Vector>& xs, const Subset& t, const Subset& s) {
  const int n = t.n();
  const auto k = static_cast<int>(xs.size());
  if (s.n() != n) throw InvalidArgument("subsets over different ground sets");
  if (k > 6 || n > 8) throw ResourceLimit("path sums are limited to k <= 6 and n <= 8");
  for (const Vector& x : xs)
    if (x.size() != n) throw InvalidArgument("vector length differs from n");
  const auto tpos = t.positions();
  std::vector<int> p(static_cast<std::size_t>(k), 1);
  std::vector<int> list(static_cast<std::size_t>(k) + tpos.size());
  double total = 0.0;
  while (true) {
    Mask flips = 0;
    for (int v : p) flips ^= Mask{1} << (v - 1);
    if (flips == s.mask()) {
      std::copy(p.begin(), p.end(), list.begin());
      std::copy(tpos.begin(), tpos.end(), list.begin() + k);
      int inversions = 0;
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b) inversions += list[a] > list[b];
      double term = (inversions & 1) ? -1.0 : 1.0;
      for (int step = 0; step < k; ++step) term *= xs[step](p[step] - 1);
      total += term;
    }
    int pos = k - 1;
    while (pos >= 0 && p[pos] == n) p[pos--] = 1;
    if (pos < 0) break;
    ++p[pos];
  }
  return total;
}

double loader_amplitude_dense(const std::vector<Vector>& xs, const Subset& t, const Subset& s) {
  const int n = t.n();
  if (s.n() != n) throw InvalidArgument("subsets over different ground sets");
  if (n > limits().dense_qubits) throw ResourceLimit("dense simulation limit exceeded");
  std::vector<double> amps(std::size_t{1} << n, 0.0);
  amps[t.mask()] = 1.0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    if (it->size() != n) throw InvalidArgument("vector length differs from n");
    amps = apply_gamma(amps, *it);
  }
  return amps[t.mask() ^ s.mask()];
}

}  // namespace subspace
