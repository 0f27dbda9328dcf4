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

#include "subspace/circuit.hpp"

#include <algorithm>
#include <string>

#include "subspace/errors.hpp"

namespace subspace {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kRBS:
      return "RBS";
    case GateKind::kFBS:
      return "FBS";
    case GateKind::kX:
      return "X";
    case GateKind::kZ:
      return "Z";
    case GateKind::kCZ:
      return "CZ";
    case GateKind::kCX:
      return "CX";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::kRBS, GateKind::kFBS, GateKind::kX, GateKind::kZ, GateKind::kCZ,
                     GateKind::kCX}) {
    if (gate_name(k) == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

namespace {

Gate make_rotation(GateKind kind, int i, int j, double theta) {
  if (i == j) throw InvalidArgument("two-qubit gate needs distinct qubits");
  if (i > j) return Gate{kind, j, i, -theta};
  return Gate{kind, i, j, theta};
}

}  // namespace

Gate Gate::rbs(int i, int j, double theta) { return make_rotation(GateKind::kRBS, i, j, theta); }
Gate Gate::fbs(int i, int j, double theta) { return make_rotation(GateKind::kFBS, i, j, theta); }
Gate Gate::x(int q) { return Gate{GateKind::kX, q, 0, 0.0}; }
Gate Gate::z(int q) { return Gate{GateKind::kZ, q, 0, 0.0}; }

Gate Gate::cz(int a, int b) {
  if (a == b) throw InvalidArgument("CZ needs distinct qubits");
  return Gate{GateKind::kCZ, a, b, 0.0};
}

Gate Gate::cx(int control, int target) {
  if (control == target) throw InvalidArgument("CX needs distinct qubits");
  return Gate{GateKind::kCX, control, target, 0.0};
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (rotation()) g.theta = -theta;
  return g;
}

Circuit::Circuit(int n, std::string label) : n_(n), label_(std::move(label)) {
  if (n < 1 || n > 63) throw InvalidArgument("circuit qubit count must lie in [1, 63]");
}

Circuit& Circuit::add(const Gate& g) {
  auto in_range = [this](int q) { return q >= 1 && q <= n_; };
  if (!in_range(g.q0) || (g.two_qubit() && !in_range(g.q1))) {
    throw InvalidArgument(std::string(gate_name(g.kind)) + " gate on qubits outside [1, " +
                          std::to_string(n_) + "]");
  }
  if (g.two_qubit() && g.q0 == g.q1) throw InvalidArgument("two-qubit gate on a single qubit");
  if (g.rotation() && g.q0 > g.q1) {
    gates_.push_back(Gate{g.kind, g.q1, g.q0, -g.theta});
  } else {
    gates_.push_back(g);
  }
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ > n_) throw InvalidArgument("appended circuit has more qubits");
  for (const Gate& g : other.gates_) add(g);
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(n_, label_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

int Circuit::depth() const {
  std::vector<int> last(n_ + 1, 0);
  int depth = 0;
  for (const Gate& g : gates_) {
    int layer = last[g.q0];
    if (g.two_qubit()) layer = std::max(layer, last[g.q1]);
    ++layer;
    last[g.q0] = layer;
    if (g.two_qubit()) last[g.q1] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

std::size_t Circuit::gate_count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

Circuit lower_fbs(const Gate& g, int n) {
  if (g.kind != GateKind::kFBS) throw InvalidArgument("lower_fbs expects an FBS gate");
  Circuit out(n);
  const int i = g.q0;
  const int j = g.q1;
  if (j - i == 1) {
    out.add(Gate::rbs(i, j, g.theta));
    return out;
  }
  // Balanced fan-in of the qubits strictly between i and j onto qubit i+1.
  std::vector<Gate> parity;
  const int k = j - i - 1;
  for (int step = 1; step < k; step *= 2)
    for (int a = 0; a + step < k; a += 2 * step) parity.push_back(Gate::cx(i + 1 + a + step, i + 1 + a));
  for (const Gate& p : parity) out.add(p);
  out.add(Gate::cz(i + 1, i));
  out.add(Gate::rbs(i, j, g.theta));
  out.add(Gate::cz(i + 1, i));
  for (auto it = parity.rbegin(); it != parity.rend(); ++it) out.add(*it);
  return out;
}

Circuit lower_fbs(const Circuit& c) {
  Circuit out(c.n(), c.label());
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::kFBS) {
      out.append(lower_fbs(g, c.n()));
    } else {
      out.add(g);
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const Circuit& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n();
  if (!c.label().empty()) j["label"] = c.label();
  auto gates = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::ordered_json jg;
    jg["g"] = gate_name(g.kind);
    if (g.two_qubit()) {
      jg["q"] = {g.q0, g.q1};
    } else {
      jg["q"] = {g.q0};
    }
    if (g.rotation()) jg["theta"] = g.theta;
    gates.push_back(std::move(jg));
  }
  j["gates"] = std::move(gates);
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("n").get<int>(), j.value("label", std::string{}));
    for (const auto& jg : j.at("gates")) {
      const GateKind kind = parse_gate_kind(jg.at("g").get<std::string>());
      const auto& q = jg.at("q");
      const std::size_t arity = (kind == GateKind::kX || kind == GateKind::kZ) ? 1 : 2;
      if (!q.is_array() || q.size() != arity) {
        throw InvalidArgument(std::string(gate_name(kind)) + " expects " + std::to_string(arity) +
                              " qubit index(es)");
      }
      switch (kind) {
        case GateKind::kRBS:
        case GateKind::kFBS:
          c.add(Gate{kind, q[0].get<int>(), q[1].get<int>(), jg.at("theta").get<double>()});
          break;
        case GateKind::kX:
          c.add(Gate::x(q[0].get<int>()));
          break;
        case GateKind::kZ:
          c.add(Gate::z(q[0].get<int>()));
          break;
        case GateKind::kCZ:
          c.add(Gate::cz(q[0].get<int>(), q[1].get<int>()));
          break;
        case GateKind::kCX:
          c.add(Gate::cx(q[0].get<int>(), q[1].get<int>()));
          break;
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed circuit JSON: ") + e.what());
  }
}

std::string serialize(const Circuit& c) { return to_json(c).dump(); }

Circuit parse_circuit(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("circuit is not valid JSON: ") + e.what());
  }
  return circuit_from_json(j);
}

}  // namespace subspace
