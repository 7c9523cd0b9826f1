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

#include "epsent/random.hpp"

#include <cmath>

#include "epsent/error.hpp"

namespace epsent {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

Matrix haar_unitary(int n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

Matrix random_density_matrix(int dim, int rank, Rng& rng) {
  if (rank <= 0) throw Error("random_density: rank must be positive");
  if (rank > dim) throw Error("random_density: rank exceeds total dimension");
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed) {
  Rng rng(seed);
  const int dim = total_dimension(dims);
  return DensityMatrix(dims, random_density_matrix(dim, rank, rng));
}

DensityMatrix random_pure(const Dims& dims, std::uint64_t seed) { return random_density(dims, 1, seed); }

Matrix random_product_matrix(const Dims& dims, int local_rank, Rng& rng) {
  Matrix out = Matrix::Ones(1, 1);
  for (int d : dims) out = kron(out, random_density_matrix(d, std::min(local_rank, d), rng));
  return out;
}

Matrix random_separable_matrix(const Dims& dims, int terms, Rng& rng) {
  const int dim = total_dimension(dims);
  Matrix out = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = -std::log(1.0 - rng.uniform());
    const int local_rank = 1 + rng.index(2);
    out += w * random_product_matrix(dims, local_rank, rng);
    total += w;
  }
  return hermitian_part(out / total);
}

}  // namespace epsent
