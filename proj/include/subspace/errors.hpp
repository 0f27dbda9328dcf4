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
#include <stdexcept>
#include <string>
#include <string_view>

namespace subspace {

enum class ErrorKind {
  kInvalidArgument,
  kDegenerateInput,
  kResourceLimit,
  kInvalidOperation,
};

std::string_view to_string(ErrorKind kind);

/// Base for every error raised by the library. The kind is machine-readable
/// and ends up in the CLI's error report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what)
      : Error(ErrorKind::kDegenerateInput, what) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorKind::kResourceLimit, what) {}
};

class InvalidOperation : public Error {
 public:
  explicit InvalidOperation(const std::string& what)
      : Error(ErrorKind::kInvalidOperation, what) {}
};

/// Size caps for dense objects. Defaults are desk-scale; the CLI may
/// override them from the environment before any work starts.
struct Limits {
  std::size_t compound_dim = 5000;     // C(n,k) for dense compound matrices
  int dense_qubits = 20;               // full statevector simulation
  std::size_t sector_dim = 1000000;    // C(n,d) for sector states
  int unitary_qubits = 12;             // dense 2^n x 2^n operators
  int quantum_sampling_qubits = 14;    // dense quantum determinant sampling
  std::size_t sve_dim = 2000;          // sector dimension for phase estimation
  int sve_bits = 12;                   // phase register size
  std::size_t laplacian_block = 5000;  // per-weight Laplacian block
};

const Limits& limits();
void set_limits(const Limits& l);

/// Reads SUBSPACE_COMPOUND_LIMIT, SUBSPACE_DENSE_QUBITS, SUBSPACE_SECTOR_LIMIT,
/// SUBSPACE_UNITARY_QUBITS, SUBSPACE_SVE_LIMIT and SUBSPACE_LAPLACIAN_LIMIT.
/// Unset variables keep their defaults.
Limits limits_from_env(Limits base = {});

}  // namespace subspace
