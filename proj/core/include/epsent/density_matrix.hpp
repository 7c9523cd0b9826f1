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

#include <span>
#include <string>
#include <vector>

#include "epsent/linalg.hpp"

namespace epsent {

/// A quantum state on a multipartite space with local dimensions `dims`.
///
/// Construction validates the state invariants: Hermitian within 1e-10,
/// unit trace within 1e-10 and smallest eigenvalue >= -1e-9. The stored
/// matrix is the Hermitian part of the input. Values are immutable.
class DensityMatrix {
 public:
  /// The trivial one-dimensional state.
  DensityMatrix() : dims_{1}, mat_(Matrix::Ones(1, 1)) {}
  DensityMatrix(Dims dims, Matrix mat);

  /// Skips the eigenvalue check. Only for matrices that are density
  /// matrices by construction (projections, convex mixtures).
  static DensityMatrix trusted(Dims dims, Matrix mat);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return mat_; }
  int dim() const noexcept { return static_cast<int>(mat_.rows()); }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, Dims dims, Matrix mat);

  Dims dims_;
  Matrix mat_;
};

/// Checks the DensityMatrix invariants on a raw matrix, throwing
/// InvariantError naming the first violated one.
void validate_state(std::span<const int> dims, const Matrix& mat);

/// Two disjoint, nonempty blocks of party indices.
struct Partition {
  std::vector<int> first;
  std::vector<int> second;

  /// Throws epsent::Error unless the blocks are valid for `parties` parties.
  void validate(int parties) const;
  /// Sorted union of both blocks.
  std::vector<int> covered() const;
  std::string to_string() const;
  /// Parses "0|1", "0,1|2" or letter forms such as "A|C", "AB|C".
  static Partition parse(const std::string& spec);

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// The partition {0}|{1}.
Partition bipartition();

/// State restricted to a partition: the reduced state on the covered
/// parties, its dims, and the (reduced) party indices of the second block.
struct ReducedView {
  Matrix mat;
  Dims dims;
  std::vector<int> second;
  std::vector<int> covered;
  bool full = true;
};
ReducedView reduce_to_partition(const Matrix& mat, std::span<const int> dims, const Partition& partition);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b, int cap = kDefaultDimensionCap);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Transpose on one tensor factor; the result may fail to be PSD.
Matrix partial_transpose(const DensityMatrix& rho, int party);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// S(rho || sigma) in bits. Returns +infinity when the support of rho is not
/// contained in the support of sigma (eigenvalue threshold 1e-9).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy(const Matrix& rho, const Matrix& sigma);

/// Von Neumann entropy in bits.
double entropy(const Matrix& rho);

}  // namespace epsent
