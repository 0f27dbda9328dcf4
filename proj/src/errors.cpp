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

#include "subspace/errors.hpp"

#include <cstdlib>
#include <string>

namespace subspace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid-argument";
    case ErrorKind::kDegenerateInput:
      return "degenerate-input";
    case ErrorKind::kResourceLimit:
      return "resource-limit";
    case ErrorKind::kInvalidOperation:
      return "invalid-operation";
  }
  return "unknown";
}

namespace {

Limits& mutable_limits() {
  static Limits l;
  return l;
}

template <typename T>
void read_env(const char* name, T& out) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return;
  try {
    long long parsed = std::stoll(v);
    if (parsed <= 0) throw std::out_of_range(name);
    out = static_cast<T>(parsed);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("environment variable ") + name +
                          " must be a positive integer, got '" + v + "'");
  }
}

}  // namespace

const Limits& limits() { return mutable_limits(); }

void set_limits(const Limits& l) { mutable_limits() = l; }

Limits limits_from_env(Limits base) {
  read_env("SUBSPACE_COMPOUND_LIMIT", base.compound_dim);
  read_env("SUBSPACE_DENSE_QUBITS", base.dense_qubits);
  read_env("SUBSPACE_SECTOR_LIMIT", base.sector_dim);
  read_env("SUBSPACE_UNITARY_QUBITS", base.unitary_qubits);
  read_env("SUBSPACE_SVE_LIMIT", base.sve_dim);
  read_env("SUBSPACE_LAPLACIAN_LIMIT", base.laplacian_block);
  return base;
}

}  // namespace subspace
