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

// Balls of states around a center, for the trace distance and for the
// relative entropy S(sigma || center).

#pragma once

#include "epsent/density_matrix.hpp"
#include "epsent/measures.hpp"

namespace epsent {

inline constexpr double kBallSlack = 1e-9;

struct BallSpec {
  Distance distance = Distance::Trace;
  double epsilon = 0.0;
  DensityMatrix center;

  /// Throws epsent::Error for a negative or non-finite radius.
  void validate() const;
};

/// D(center, sigma) <= epsilon + 1e-9, or S(sigma || center) <= epsilon + 1e-9.
bool contains(const BallSpec& ball, const DensityMatrix& sigma);
bool contains(const BallSpec& ball, const Matrix& sigma);

/// Distance of sigma from the center in the ball's own sense.
double ball_distance(const BallSpec& ball, const Matrix& sigma);

/// Frobenius projection onto {X Hermitian, tr X = 1, ||X - center||_1 <= 2 eps}.
/// Trace balls only. The result need not be PSD.
Matrix project_ball(const BallSpec& ball, const Matrix& sigma);

struct FeasibleProjection {
  DensityMatrix state;
  bool converged = false;
  int iterations = 0;
};

/// Dykstra's alternating projections between the density matrices and the
/// trace ball. The returned state always lies in both sets: if the residual
/// target is missed, the last density iterate is pulled toward the center
/// until it is inside the ball.
FeasibleProjection project_feasible(const BallSpec& ball, const Matrix& sigma, int max_iters = 5000,
                                    double tol = 1e-8);

/// Pulls a state toward the center along the segment until it is in the ball
/// (bisection for relent balls). Returns the state unchanged when inside.
Matrix shrink_into_ball(const BallSpec& ball, const Matrix& sigma);

}  // namespace epsent
