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

#include "epsent/ball.hpp"

#include <cmath>

#include "epsent/error.hpp"

namespace epsent {
namespace {

void check_shape(const BallSpec& ball, const Matrix& sigma, const char* what) {
  if (sigma.rows() != ball.center.dim() || sigma.cols() != ball.center.dim())
    throw Error(std::string(what) + ": dimension mismatch with the ball center");
}

}  // namespace

void BallSpec::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw Error("ball radius must be finite and nonnegative");
}

double ball_distance(const BallSpec& ball, const Matrix& sigma) {
  check_shape(ball, sigma, "ball");
  if (ball.distance == Distance::Trace) return trace_distance(ball.center.matrix(), sigma);
  return relative_entropy(sigma, ball.center.matrix());
}

bool contains(const BallSpec& ball, const Matrix& sigma) { return ball_distance(ball, sigma) <= ball.epsilon + kBallSlack; }

bool contains(const BallSpec& ball, const DensityMatrix& sigma) {
  if (sigma.dims() != ball.center.dims()) throw Error("contains: dims do not match the ball center");
  return contains(ball, sigma.matrix());
}

Matrix project_ball(const BallSpec& ball, const Matrix& sigma) {
  if (ball.distance != Distance::Trace) throw Error("project_ball: only trace-distance balls have a projection");
  check_shape(ball, sigma, "project_ball");
  const Matrix delta = hermitian_part(sigma - ball.center.matrix());
  auto es = hermitian_eigen_sym(delta);
  const double radius = 2.0 * ball.epsilon;
  if (std::abs(delta.trace().real()) <= 1e-15 && es.values.cwiseAbs().sum() <= radius) return sigma;
  es.values = project_l1_zero_sum(es.values, radius);
  return ball.center.matrix() + spectral_apply(es, [](double x) { return x; });
}

Matrix shrink_into_ball(const BallSpec& ball, const Matrix& sigma) {
  const double d = ball_distance(ball, sigma);
  if (d <= ball.epsilon) return sigma;
  const Matrix& c = ball.center.matrix();
  if (ball.distance == Distance::Trace) {
    // The trace distance is linear along the segment.
    const double s = ball.epsilon / d;
    return c + s * (sigma - c);
  }
  // S(c + s (sigma - c) || c) is convex in s and zero at s = 0.
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (relative_entropy(Matrix(c + mid * (sigma - c)), c) <= ball.epsilon)
      lo = mid;
    else
      hi = mid;
  }
  return c + lo * (sigma - c);
}

FeasibleProjection project_feasible(const BallSpec& ball, const Matrix& sigma, int max_iters, double tol) {
  if (ball.distance != Distance::Trace) throw Error("project_feasible: only trace-distance balls are supported");
  check_shape(ball, sigma, "project_feasible");
  const auto n = sigma.rows();
  Matrix x = hermitian_part(sigma);
  Matrix y = x;
  Matrix p = Matrix::Zero(n, n);
  Matrix q = Matrix::Zero(n, n);
  FeasibleProjection out;
  int it = 0;
  double residual = 0.0;
  for (; it < max_iters; ++it) {
    y = project_to_density(x + p);
    p += x - y;
    const Matrix next = project_ball(ball, y + q);
    q += y - next;
    x = next;
    residual = (x - y).norm();
    if (residual < tol) {
      ++it;
      break;
    }
  }
  out.converged = residual < tol;
  out.iterations = it;
  out.state = DensityMatrix::trusted(ball.center.dims(), hermitian_part(shrink_into_ball(ball, y)));
  return out;
}

}  // namespace epsent
