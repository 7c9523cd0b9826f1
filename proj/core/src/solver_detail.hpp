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

// Internal helpers shared by the trace-ball solver, the oracle and the
// relative-entropy solver.

#pragma once

#include <limits>
#include <vector>

#include "epsent/measures.hpp"
#include "epsent/random.hpp"

namespace epsent::detail {

bool covers_all(const Partition& partition, int parties);

/// The partition re-indexed to the parties of a reduced view.
Partition local_partition(const Partition& partition, const ReducedView& view);

/// Tensor product of a state on `a_parties` with one on the remaining
/// parties, with the factors put back into ascending party order.
Matrix tensor_in_order(const Matrix& a, const std::vector<int>& a_parties, const Matrix& b, const Dims& dims);

/// A state on the full space whose reduction to the covered parties is
/// `covered_state`: covered_state (x) rho_rest. Identity map when the
/// partition covers everything.
Matrix lift_covered(const Matrix& covered_state, const ReducedView& view, const Matrix& rho, const Dims& dims);

/// Random state of random rank.
Matrix random_state(int dim, Rng& rng);

/// Random traceless Hermitian direction of unit Frobenius norm.
Matrix random_direction(int dim, Rng& rng);

/// Running minimum over feasible candidates.
struct Best {
  double value = std::numeric_limits<double>::infinity();
  Matrix state;

  bool offer(double v, const Matrix& m) {
    if (!(v < value)) return false;
    value = v;
    state = m;
    return true;
  }
};

}  // namespace epsent::detail
