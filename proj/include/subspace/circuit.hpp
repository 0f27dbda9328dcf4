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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace subspace {

enum class GateKind { kRBS, kFBS, kX, kZ, kCZ, kCX };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// A gate on 1-based qubit indices. RBS and FBS are stored with q0 < q1; the
/// factories swap reversed indices and negate the angle, which leaves the
/// unitary unchanged. CX stores (control, target).
struct Gate {
  GateKind kind = GateKind::kX;
  int q0 = 0;
  int q1 = 0;
  double theta = 0.0;

  static Gate rbs(int i, int j, double theta);
  static Gate fbs(int i, int j, double theta);
  static Gate x(int q);
  static Gate z(int q);
  static Gate cz(int a, int b);
  static Gate cx(int control, int target);

  bool two_qubit() const noexcept { return kind != GateKind::kX && kind != GateKind::kZ; }
  bool rotation() const noexcept { return kind == GateKind::kRBS || kind == GateKind::kFBS; }
  /// RBS, FBS, Z and CZ keep every Hamming-weight sector invariant.
  bool weight_preserving() const noexcept {
    return kind != GateKind::kX && kind != GateKind::kCX;
  }
  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n, std::string label = {});

  int n() const noexcept { return n_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Throws InvalidArgument for indices outside [1, n].
  Circuit& add(const Gate& g);
  Circuit& append(const Circuit& other);

  /// Reversed gate order with each gate inverted.
  Circuit inverse() const;

  /// Greedy ASAP layering: a gate lands one layer after the latest gate that
  /// touches any of its qubits.
  int depth() const;
  std::size_t gate_count() const noexcept { return gates_.size(); }
  std::size_t gate_count(GateKind kind) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
  std::string label_;
};

/// FBS_{ij}(theta) as RBS/CZ/CX gates: a single RBS for neighbours,
/// CZ_{i+1,i} RBS CZ_{i+1,i} at distance 2, and otherwise a balanced CX
/// parity tree onto qubit i+1 around the same three-gate core.
Circuit lower_fbs(const Gate& g, int n);
/// Every FBS in `c` lowered; other gates copied.
Circuit lower_fbs(const Circuit& c);

/// {"n":..,"label":..,"gates":[{"g":"RBS","q":[1,2],"theta":0.5},..]}
nlohmann::ordered_json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);
std::string serialize(const Circuit& c);
Circuit parse_circuit(std::string_view text);

}  // namespace subspace
