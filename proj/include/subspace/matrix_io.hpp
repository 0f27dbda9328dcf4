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

#include <filesystem>
#include <istream>
#include <ostream>

#include "subspace/linalg.hpp"

namespace subspace {

/// Whitespace-delimited text, one row per line. An optional first line
/// "# n d" pins the shape and is checked against the data. Blank lines are
/// skipped.
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace subspace
