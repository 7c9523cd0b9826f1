// Copyright 2026 The epsent Authors
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

#include "epsent/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epsent/error.hpp"

namespace epsent {

std::string format_double(double value, int significant_digits) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

std::string state_to_json(const DensityMatrix& state) {
  std::ostringstream out;
  out << "{\n  \"dims\": [";
  for (std::size_t k = 0; k < state.dims().size(); ++k) out << (k ? ", " : "") << state.dims()[k];
  out << "],\n  \"matrix\": [\n";
  const Matrix& m = state.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << (j ? ", " : "") << '[' << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag())
          << ']';
    }
    out << (i + 1 < m.rows() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

DensityMatrix state_from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvariantError("json", e.what());
  }
  if (!doc.is_object()) throw InvariantError("json", "top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "dims" && key != "matrix") throw InvariantError("json", "unknown key \"" + key + "\"");
  if (!doc.contains("dims") || !doc["dims"].is_array()) throw InvariantError("json", "missing array \"dims\"");
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw InvariantError("json", "missing array \"matrix\"");

  Dims dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw InvariantError("json", "dims entries must be integers");
    dims.push_back(d.get<int>());
  }
  const auto& rows = doc["matrix"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw InvariantError("shape", "matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw InvariantError("json", "matrix entries must be [re, im] pairs");
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& state) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file " + path.string());
  out << state_to_json(state);
}

}  // namespace epsent
