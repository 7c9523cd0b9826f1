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

// State file format:
//
//   {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//
// Row-major, every number written with 17 significant digits. The reader
// validates the DensityMatrix invariants and throws InvariantError naming
// the violated one ("json" for syntax and schema problems).

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "epsent/density_matrix.hpp"

namespace epsent {

std::string format_double(double value, int significant_digits = 17);

std::string state_to_json(const DensityMatrix& state);
DensityMatrix state_from_json(std::string_view text);

DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& state);

}  // namespace epsent
