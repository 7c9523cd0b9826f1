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

// Dense Hermitian linear algebra on raw matrices. These routines carry no
// state invariants; DensityMatrix (density_matrix.hpp) layers validation on
// top of them.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace epsent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-9;
inline constexpr double kSupportTol = 1e-9;
inline constexpr int kDefaultDimensionCap = 64;

/// Spectral decomposition H = V diag(values) V^dagger, values descending.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12 (relative to the matrix norm
/// when that exceeds one). Throws epsent::Error for non-Hermitian input.
EigenSystem hermitian_eigen(const Matrix& h);

/// Same as hermitian_eigen but symmetrizes the input first and never throws
/// on small Hermiticity defects. Used inside iterative solvers.
EigenSystem hermitian_eigen_sym(const Matrix& h);

double max_hermitian_defect(const Matrix& m);
Matrix hermitian_part(const Matrix& m);

/// V f(values) V^dagger.
template <class F>
Matrix spectral_apply(const EigenSystem& es, F&& f) {
  const Eigen::Index n = es.values.size();
  Matrix scaled = es.vectors;
  for (Eigen::Index j = 0; j < n; ++j) scaled.col(j) *= f(es.values(j));
  return scaled * es.vectors.adjoint();
}

double trace_norm(const Matrix& hermitian);
double min_eigenvalue(const Matrix& hermitian);
Matrix matrix_log2(const Matrix& positive_definite);

/// Euclidean projection of v onto {x >= 0, sum x = total}.
RealVector project_simplex(const RealVector& v, double total = 1.0);

/// Euclidean projection of v onto {sum x = 0, ||x||_1 <= radius}.
RealVector project_l1_zero_sum(const RealVector& v, double radius);

/// Frobenius projection of a Hermitian matrix onto the density matrices.
Matrix project_to_density(const Matrix& hermitian);

/// Eigenvalue soft-thresholding: the prox of threshold * ||.||_1.
Matrix soft_threshold(const Matrix& hermitian, double threshold);

/// Product of dims, throwing "dimension cap exceeded" above `cap`.
int total_dimension(std::span<const int> dims, int cap = kDefaultDimensionCap);

Matrix kron(const Matrix& a, const Matrix& b);

/// Partial trace keeping the listed parties (in the order given by `dims`).
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep);

/// Adjoint of partial_trace: G (on the kept parties) tensored with identity
/// on the traced ones, in the original party order.
Matrix embed_identity(const Matrix& g, std::span<const int> dims, std::span<const int> keep);

/// Transpose of the tensor factors listed in `parties`.
Matrix partial_transpose(const Matrix& m, std::span<const int> dims, std::span<const int> parties);

/// Precomputed partial transpose for repeated use on one shape.
class PartialTransposer {
 public:
  PartialTransposer(std::span<const int> dims, std::span<const int> parties);
  Matrix operator()(const Matrix& m) const;
  int dim() const noexcept { return dim_; }

 private:
  int dim_ = 0;
  std::vector<int> target_;
};

}  // namespace epsent
