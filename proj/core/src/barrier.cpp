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

#include "barrier.hpp"

#include <cmath>

#include "epsent/error.hpp"

namespace epsent::detail {

HermitianCoords::HermitianCoords(Matrix isometry, bool with_trace)
    : isometry_(std::move(isometry)), with_trace_(with_trace) {
  const auto k = isometry_.cols();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (with_trace) basis_.push_back(Matrix::Identity(k, k) / std::sqrt(static_cast<double>(k)));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      Matrix re = Matrix::Zero(k, k);
      re(i, j) = re(j, i) = inv_sqrt2;
      basis_.push_back(std::move(re));
      Matrix im = Matrix::Zero(k, k);
      im(i, j) = Complex(0.0, -inv_sqrt2);
      im(j, i) = Complex(0.0, inv_sqrt2);
      basis_.push_back(std::move(im));
    }
  }
  for (Eigen::Index m = 1; m < k; ++m) {
    Matrix d = Matrix::Zero(k, k);
    const double norm = std::sqrt(static_cast<double>(m * (m + 1)));
    for (Eigen::Index l = 0; l < m; ++l) d(l, l) = 1.0 / norm;
    d(m, m) = -static_cast<double>(m) / norm;
    basis_.push_back(std::move(d));
  }
}

Matrix HermitianCoords::inner(const RealVector& x) const {
  const auto k = isometry_.cols();
  Matrix s = with_trace_ ? Matrix::Zero(k, k) : Matrix(Matrix::Identity(k, k) / static_cast<double>(k));
  for (std::size_t j = 0; j < basis_.size(); ++j) s += x(static_cast<Eigen::Index>(j)) * basis_[j];
  return s;
}

Matrix HermitianCoords::full(const RealVector& x) const { return isometry_ * inner(x) * isometry_.adjoint(); }

RealVector HermitianCoords::coords_of_inner(const Matrix& s) const {
  RealVector x(size());
  for (std::size_t j = 0; j < basis_.size(); ++j)
    x(static_cast<Eigen::Index>(j)) = (basis_[j].adjoint().cwiseProduct(s.transpose())).sum().real();
  return x;
}

RealVector HermitianCoords::coords_of_full(const Matrix& m) const {
  return coords_of_inner(isometry_.adjoint() * m * isometry_);
}

RealVector HermitianCoords::pull_inner_gradient(const Matrix& g) const { return coords_of_inner(g); }

RealVector HermitianCoords::pull_gradient(const Matrix& full_gradient) const {
  return coords_of_inner(isometry_.adjoint() * full_gradient * isometry_);
}

Matrix log_divided_differences(const RealVector& lambda) {
  const auto n = lambda.size();
  Matrix l(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = lambda(i);
      const double b = lambda(j);
      const double gap = a - b;
      if (std::abs(gap) > 1e-9 * std::max(a, b))
        l(i, j) = (std::log(a) - std::log(b)) / gap;
      else
        l(i, j) = 2.0 / (a + b);
    }
  }
  return l;
}

Matrix log_trace_gradient(const EigenSystem& x, const Matrix& a) {
  const Matrix rotated = x.vectors.adjoint() * a * x.vectors;
  const Matrix weighted = log_divided_differences(x.values).cwiseProduct(rotated);
  return x.vectors * weighted * x.vectors.adjoint();
}

namespace {

struct StageResult {
  int iterations = 0;
  bool converged = false;
};

StageResult bfgs_stage(const BarrierObjective& objective, RealVector& x, double t, int max_inner) {
  const auto n = x.size();
  double f = 0.0;
  RealVector g(n);
  if (!objective(x, t, f, &g)) throw Error("barrier: iterate left the domain");

  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  StageResult out;
  RealVector trial(n), g_trial(n);
  for (int it = 0; it < max_inner; ++it) {
    ++out.iterations;
    RealVector d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h.setIdentity();
      fresh = true;
      d = -g;
      slope = g.dot(d);
    }
    if (-slope < 1e-24) {
      out.converged = true;
      break;
    }
    double alpha = 1.0;
    bool accepted = false;
    double f_trial = 0.0;
    for (int ls = 0; ls < 80; ++ls) {
      trial = x + alpha * d;
      if (objective(trial, t, f_trial, &g_trial) && f_trial <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (fresh) {
        out.converged = -slope < 1e-16;
        break;
      }
      h.setIdentity();
      fresh = true;
      continue;
    }
    const RealVector s = trial - x;
    const RealVector y = g_trial - g;
    const double sy = s.dot(y);
    const double decrease = f - f_trial;
    x = trial;
    f = f_trial;
    g = g_trial;
    if (sy > 1e-300 && sy > 1e-14 * s.norm() * y.norm()) {
      if (fresh) h *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      h = left * h * left.transpose() + rho * s * s.transpose();
      fresh = false;
    }
    if (decrease <= 1e-16 * std::max(1.0, std::abs(f)) && s.norm() < 1e-13) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

BarrierOutcome minimize_barrier(const BarrierObjective& objective, RealVector x0, const BarrierOptions& options) {
  BarrierOutcome out{std::move(x0), 0, false};
  double t = options.t_start;
  while (true) {
    const auto stage = bfgs_stage(objective, out.x, t, options.max_inner);
    out.iterations += stage.iterations;
    out.converged = stage.converged;
    if (t <= options.t_final) break;
    t = std::max(t * options.shrink, options.t_final);
  }
  return out;
}

}  // namespace epsent::detail
