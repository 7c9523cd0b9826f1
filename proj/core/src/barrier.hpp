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

// Internal: log-barrier path following with BFGS inner solves, and real
// coordinates for Hermitian matrices supported on a subspace.

#pragma once

#include <functional>
#include <vector>

#include "epsent/linalg.hpp"

namespace epsent::detail {

/// Coordinates x for matrices V (s0 + sum_j x_j B_j) V^dagger, where B_j is
/// an orthonormal basis of the traceless (or, with `with_trace`, all)
/// Hermitian k x k matrices and V is a D x k isometry.
class HermitianCoords {
 public:
  HermitianCoords(Matrix isometry, bool with_trace);

  int size() const noexcept { return static_cast<int>(basis_.size()); }
  int inner_dim() const noexcept { return static_cast<int>(isometry_.cols()); }
  const Matrix& isometry() const noexcept { return isometry_; }

  /// Inner k x k matrix s0 + sum_j x_j B_j (s0 = I/k unless with_trace).
  Matrix inner(const RealVector& x) const;
  Matrix full(const RealVector& x) const;
  RealVector coords_of_inner(const Matrix& s) const;
  RealVector coords_of_full(const Matrix& m) const;
  /// Components Re tr(G_inner B_j) of a full-space gradient G.
  RealVector pull_gradient(const Matrix& full_gradient) const;
  RealVector pull_inner_gradient(const Matrix& inner_gradient) const;

 private:
  Matrix isometry_;
  bool with_trace_;
  std::vector<Matrix> basis_;
};

/// Objective callback: returns false when x is outside the domain. `grad`
/// may be null.
using BarrierObjective = std::function<bool(const RealVector& x, double t, double& value, RealVector* grad)>;

struct BarrierOptions {
  double t_start = 1e-3;
  double t_final = 1e-10;
  double shrink = 0.1;
  int max_inner = 400;
};

struct BarrierOutcome {
  RealVector x;
  int iterations = 0;
  bool converged = false;
};

BarrierOutcome minimize_barrier(const BarrierObjective& objective, RealVector x0, const BarrierOptions& options);

/// Weights L_ij of the Frechet derivative of the natural log at a positive
/// matrix with eigenvalues `lambda`: (ln a - ln b)/(a - b), or 1/a when equal.
Matrix log_divided_differences(const RealVector& lambda);

/// Gradient of X -> tr(A ln X) at X = V diag(lambda) V^dagger.
Matrix log_trace_gradient(const EigenSystem& x, const Matrix& a);

}  // namespace epsent::detail
