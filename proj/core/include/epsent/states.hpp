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

// Named states used by tests, the CLI `gen` command and the theorem suite.

#pragma once

#include "epsent/density_matrix.hpp"

namespace epsent::states {

DensityMatrix basis(const Dims& dims, int index);
DensityMatrix maximally_mixed(const Dims& dims);
/// |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell();
/// w |Psi-><Psi-| + (1 - w) I/4.
DensityMatrix werner(double w);
/// f |Phi+><Phi+| + (1 - f)(I - |Phi+><Phi+|)/3.
DensityMatrix isotropic(double f);
DensityMatrix ghz(int qubits = 3);
DensityMatrix w_state();
DensityMatrix from_ket(const Dims& dims, const Eigen::VectorXcd& ket);

}  // namespace epsent::states
