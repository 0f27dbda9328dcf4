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

#include "subspace/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "subspace/errors.hpp"

namespace subspace {

Matrix read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  long expect_rows = -1;
  long expect_cols = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (rows.empty() && expect_rows < 0) {
        std::istringstream hs(line.substr(first + 1));
        long r = 0;
        long c = 0;
        if (hs >> r >> c) {
          expect_rows = r;
          expect_cols = c;
        }
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse '" + tok + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(rows.front().size()) + " columns, found " +
                            std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("matrix input is empty");
  const auto nr = static_cast<long>(rows.size());
  const auto nc = static_cast<long>(rows.front().size());
  if (expect_rows >= 0 && (expect_rows != nr || expect_cols != nc)) {
    throw InvalidArgument("header declares " + std::to_string(expect_rows) + " x " +
                          std::to_string(expect_cols) + " but data is " + std::to_string(nr) +
                          " x " + std::to_string(nc));
  }
  Matrix m(nr, nc);
  for (long i = 0; i < nr; ++i)
    for (long j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file " + path.string());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << "# " << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace subspace
