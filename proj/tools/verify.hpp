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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace subspace::cli {

struct Check {
  std::string suite;
  std::string name;
  /// Short statement of the property being checked.
  std::string claim;
  double value = 0.0;
  double tolerance = 0.0;
  /// value <= tolerance, unless `at_least` flips the comparison.
  bool at_least = false;
  bool pass = false;
};

/// Suite names accepted by run_suites, in run order.
const std::vector<std::string>& suite_names();

/// "all" or one name from suite_names(). Randomness is derived from seed.
std::vector<Check> run_suites(const std::string& suite, int max_n, std::uint64_t seed);

nlohmann::ordered_json to_json(const Check& c);
std::string format_table(const std::vector<Check>& checks);

}  // namespace subspace::cli
