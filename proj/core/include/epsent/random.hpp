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

#pragma once

#include <cstdint>
#include <random>

#include "epsent/density_matrix.hpp"

namespace epsent {

/// Deterministic generator. Passed by value or owned per task; never shared
/// between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [0, n).
  int index(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// splitmix64 mix of (seed, stream); used to derive per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Matrix with i.i.d. complex standard-normal entries.
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q.
Matrix haar_unitary(int n, Rng& rng);

/// G G^dagger / tr(G G^dagger) with G of shape (dim x rank).
DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed);
DensityMatrix random_pure(const Dims& dims, std::uint64_t seed);
Matrix random_density_matrix(int dim, int rank, Rng& rng);

/// Tensor product of independent random local states of the given rank.
Matrix random_product_matrix(const Dims& dims, int local_rank, Rng& rng);

/// Explicit convex mixture of `terms` random product states.
Matrix random_separable_matrix(const Dims& dims, int terms, Rng& rng);

}  // namespace epsent
