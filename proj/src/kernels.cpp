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

#include "subspace/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subspace/errors.hpp"
#include "subspace/random.hpp"

namespace subspace::kernels {

namespace {

constexpr std::ptrdiff_t kParallelThreshold = 1 << 12;

inline Mask bit(int q) { return Mask{1} << (q - 1); }

// The 2x2 block of RBS/FBS on (|01>, |10>) of qubits (i, j), where |10>
// means qubit i set. Row |01>: (cos, sgn*sin); row |10>: (-sgn*sin, cos).
struct Rotation {
  double c;
  double s;
  Mask bi;
  Mask bj;
  bool fermionic;
  int i;
  int j;

  explicit Rotation(const Gate& g)
      : c(std::cos(g.theta)),
        s(std::sin(g.theta)),
        bi(bit(g.q0)),
        bj(bit(g.q1)),
        fermionic(g.kind == GateKind::kFBS),
        i(g.q0),
        j(g.q1) {}

  double sign(Mask m) const { return (fermionic && between_parity(m, i, j)) ? -1.0 : 1.0; }
};

// Returns the new amplitude at `m` given the old amplitude there and at its
// partner (m with bits i and j swapped). Only called when exactly one of the
// two bits is set.
inline double rotate_entry(const Rotation& r, Mask m, double here, double partner) {
  const double sgn = r.sign(m);
  if (m & r.bi) return r.c * here - sgn * r.s * partner;  // |10> row
  return r.c * here + sgn * r.s * partner;               // |01> row
}

void check_sector_gate(const Gate& g) {
  if (!g.weight_preserving()) {
    throw InvalidOperation(std::string(gate_name(g.kind)) +
                           " changes Hamming weight and cannot act on a sector state");
  }
}

template <bool Parallel>
void dense_impl(std::span<double> a, int n, const Gate& g) {
  const auto size = static_cast<std::ptrdiff_t>(a.size());
  if (size != (std::ptrdiff_t{1} << n)) throw InvalidArgument("amplitude vector is not 2^n long");
  [[maybe_unused]] const bool par = Parallel && size >= kParallelThreshold;
  switch (g.kind) {
    case GateKind::kRBS:
    case GateKind::kFBS: {
      const Rotation r(g);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t idx = 0; idx < size; ++idx) {
        const auto m = static_cast<Mask>(idx);
        if ((m & r.bi) && !(m & r.bj)) {
          const Mask p = m ^ r.bi ^ r.bj;
          const double a10 = a[m];
          const double a01 = a[p];
          a[m] = rotate_entry(r, m, a10, a01);
          a[p] = rotate_entry(r, p, a01, a10);
        }
      }
      break;
    }
    case GateKind::kX: {
      const Mask b = bit(g.q0);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t idx = 0; idx < size; ++idx) {
        const auto m = static_cast<Mask>(idx);
        if (!(m & b)) std::swap(a[m], a[m | b]);
      }
      break;
    }
    case GateKind::kZ: {
      const Mask b = bit(g.q0);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t idx = 0; idx < size; ++idx)
        if (static_cast<Mask>(idx) & b) a[idx] = -a[idx];
      break;
    }
    case GateKind::kCZ: {
      const Mask b = bit(g.q0) | bit(g.q1);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t idx = 0; idx < size; ++idx)
        if ((static_cast<Mask>(idx) & b) == b) a[idx] = -a[idx];
      break;
    }
    case GateKind::kCX: {
      const Mask bc = bit(g.q0);
      const Mask bt = bit(g.q1);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t idx = 0; idx < size; ++idx) {
        const auto m = static_cast<Mask>(idx);
        if ((m & bc) && !(m & bt)) std::swap(a[m], a[m | bt]);
      }
      break;
    }
  }
}

template <bool Parallel>
void sector_impl(std::span<const double> in, std::span<double> out, const SectorIndex& index,
                 const Gate& g) {
  check_sector_gate(g);
  const auto size = static_cast<std::ptrdiff_t>(index.size());
  if (static_cast<std::ptrdiff_t>(in.size()) != size ||
      static_cast<std::ptrdiff_t>(out.size()) != size) {
    throw InvalidArgument("sector buffers do not match the index size");
  }
  const int top = g.two_qubit() ? std::max(g.q0, g.q1) : g.q0;
  if (top > index.n) throw InvalidArgument("gate acts outside the sector's qubits");
  [[maybe_unused]] const bool par = Parallel && size >= kParallelThreshold;
  switch (g.kind) {
    case GateKind::kRBS:
    case GateKind::kFBS: {
      const Rotation r(g);
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t k = 0; k < size; ++k) {
        const Mask m = index.masks[k];
        const bool has_i = (m & r.bi) != 0;
        const bool has_j = (m & r.bj) != 0;
        if (has_i == has_j) {
          out[k] = in[k];
        } else {
          const Mask p = m ^ r.bi ^ r.bj;
          out[k] = rotate_entry(r, m, in[k], in[rank_mask(p)]);
        }
      }
      break;
    }
    case GateKind::kZ:
    case GateKind::kCZ: {
      const Mask b = g.kind == GateKind::kZ ? bit(g.q0) : (bit(g.q0) | bit(g.q1));
#pragma omp parallel for if (par) schedule(static)
      for (std::ptrdiff_t k = 0; k < size; ++k)
        out[k] = ((index.masks[k] & b) == b) ? -in[k] : in[k];
      break;
    }
    default:
      break;
  }
}

template <bool Parallel>
std::vector<std::size_t> sample_impl(std::span<const double> cdf, std::size_t shots,
                                     std::uint64_t seed) {
  if (cdf.empty()) throw InvalidArgument("cannot sample from an empty distribution");
  std::vector<std::size_t> out(shots);
  const auto total = static_cast<std::ptrdiff_t>(shots);
  [[maybe_unused]] const bool par = Parallel && total >= 1024;
#pragma omp parallel for if (par) schedule(static)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip zero-probability tail entries that share the final cdf value.
    if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), cdf.back());
    out[s] = static_cast<std::size_t>(it - cdf.begin());
  }
  return out;
}

}  // namespace

SectorIndex::SectorIndex(int n_, int d_) : n(n_), d(d_) {
  if (binomial(n_, d_) > limits().sector_dim) {
    throw ResourceLimit("sector dimension C(" + std::to_string(n_) + "," + std::to_string(d_) +
                        ") exceeds the limit of " + std::to_string(limits().sector_dim));
  }
  masks = enumerate_masks(n_, d_);
}

std::vector<double> squared_cdf(std::span<const double> amps) {
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    acc += amps[k] * amps[k];
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw InvalidArgument("state has zero norm");
  for (double& v : cdf) v /= acc;
  return cdf;
}

void apply_dense(std::span<double> amps, int n, const Gate& g) { dense_impl<true>(amps, n, g); }

void apply_sector(std::span<const double> in, std::span<double> out, const SectorIndex& index,
                  const Gate& g) {
  sector_impl<true>(in, out, index, g);
}

std::vector<std::size_t> sample_indices(std::span<const double> cdf, std::size_t shots,
                                        std::uint64_t seed) {
  return sample_impl<true>(cdf, shots, seed);
}

namespace serial {

void apply_dense(std::span<double> amps, int n, const Gate& g) { dense_impl<false>(amps, n, g); }

void apply_sector(std::span<const double> in, std::span<double> out, const SectorIndex& index,
                  const Gate& g) {
  sector_impl<false>(in, out, index, g);
}

std::vector<std::size_t> sample_indices(std::span<const double> cdf, std::size_t shots,
                                        std::uint64_t seed) {
  return sample_impl<false>(cdf, shots, seed);
}

}  // namespace serial

}  // namespace subspace::kernels
