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

#include <algorithm>
#include <cmath>
#include <limits>

#include "barrier.hpp"
#include "epsent/error.hpp"
#include "epsent/measures.hpp"

namespace epsent {
namespace {

constexpr double kPptExitTol = 1e-12;
constexpr int kCheckEvery = 20;

// Mixes X with I/d just enough to make its partial transpose PSD.
Matrix repair_ppt(const Matrix& x, const PartialTransposer& pt) {
  const double d = static_cast<double>(x.rows());
  const double lmin = min_eigenvalue(pt(x));
  if (lmin >= 0.0) return x;
  const double t = std::min(1.0, -lmin / (1.0 / d - lmin) * (1.0 + 1e-12));
  return (1.0 - t) * x + (t / d) * Matrix::Identity(x.rows(), x.cols());
}

// min ||R - s||_1 / 2 over PPT states s. Splitting:
//   X ~ Y^Gamma, Y in D (so X is PPT), X ~ W, W near R in trace norm,
// with X itself projected onto D. Scaled-form ADMM with residual balancing.
DistanceMeasureResult trace_sep(const Matrix& r, const Dims& dims, const std::vector<int>& second,
                                const SepSearchOptions& options) {
  const PartialTransposer pt(dims, second);
  const auto n = r.rows();
  DistanceMeasureResult out;

  Matrix x = options.warm_start ? project_to_density(*options.warm_start) : r;
  Matrix y = project_to_density(pt(x));
  Matrix w = x;
  Matrix u = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  double beta = 1.0;

  Matrix best;
  double best_value = std::numeric_limits<double>::infinity();
  const auto consider = [&](const Matrix& candidate) {
    const Matrix repaired = repair_ppt(candidate, pt);
    const double value = trace_distance(r, repaired);
    if (value < best_value) {
      best_value = value;
      best = repaired;
    }
  };
  if (options.warm_start) consider(x);

  int it = 0;
  for (; it < options.max_iters; ++it) {
    const Matrix x_prev = x;
    const Matrix y_prev = y;
    const Matrix w_prev = w;
    x = project_to_density(0.5 * (pt(y - u) + (w - v)));
    const Matrix xg = pt(x);
    y = project_to_density(xg + u);
    w = r - soft_threshold(r - (x + v), 1.0 / (2.0 * beta));
    u += xg - y;
    v += x - w;

    if ((it + 1) % kCheckEvery != 0) continue;
    const double primal = std::max((xg - y).norm(), (x - w).norm());
    const double dual = std::max((pt(y - y_prev)).norm(), (w - w_prev).norm());
    consider(x);
    if (primal < options.tol && dual < options.tol && (x - x_prev).norm() < options.tol) {
      out.converged = true;
      ++it;
      break;
    }
    if (primal > 10.0 * dual) {
      beta *= 2.0;
      u /= 2.0;
      v /= 2.0;
    } else if (dual > 10.0 * primal) {
      beta /= 2.0;
      u *= 2.0;
      v *= 2.0;
    }
  }
  consider(x);
  out.value = best_value;
  out.closest_sep = DensityMatrix::trusted(dims, hermitian_part(best));
  out.iterations = it;
  return out;
}

// min S(R || tau) over PPT tau, by a log barrier on tau > 0 and tau^Gamma > 0.
DistanceMeasureResult relent_sep(const Matrix& r, const Dims& dims, const std::vector<int>& second,
                                 const SepSearchOptions& options) {
  const PartialTransposer pt(dims, second);
  const auto n = r.rows();
  const detail::HermitianCoords coords(Matrix::Identity(n, n), false);
  const auto r_spec = hermitian_eigen_sym(r);
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (r_spec.values(i) > 0.0) neg_entropy += r_spec.values(i) * std::log2(r_spec.values(i));
  const double inv_ln2 = 1.0 / std::log(2.0);

  const detail::BarrierObjective objective = [&](const RealVector& xv, double t, double& value, RealVector* grad) {
    const Matrix tau = coords.full(xv);
    const auto es = hermitian_eigen_sym(tau);
    if (!(es.values(n - 1) > 0.0)) return false;
    const Matrix tg = pt(tau);
    const auto eg = hermitian_eigen_sym(tg);
    if (!(eg.values(n - 1) > 0.0)) return false;
    const Matrix rot = es.vectors.adjoint() * r * es.vectors;
    double cross = 0.0;
    double barrier = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      cross += rot(i, i).real() * std::log2(es.values(i));
      barrier += std::log(es.values(i)) + std::log(eg.values(i));
    }
    value = neg_entropy - cross - t * barrier;
    if (grad) {
      const Matrix inv = spectral_apply(es, [](double x) { return 1.0 / x; });
      const Matrix inv_g = spectral_apply(eg, [](double x) { return 1.0 / x; });
      const Matrix g = -inv_ln2 * detail::log_trace_gradient(es, r) - t * (inv + pt(inv_g));
      *grad = coords.pull_gradient(g);
    }
    return true;
  };

  RealVector x0 = RealVector::Zero(coords.size());
  detail::BarrierOptions barrier;
  barrier.t_start = 1e-2;
  if (options.warm_start) {
    const Matrix start = 0.95 * repair_ppt(project_to_density(*options.warm_start), pt) +
                         0.05 / static_cast<double>(n) * Matrix::Identity(n, n);
    RealVector candidate = coords.coords_of_full(start);
    double probe = 0.0;
    if (objective(candidate, barrier.t_start, probe, nullptr)) {
      x0 = candidate;
      barrier.t_start = 1e-4;
    }
  }
  const auto outcome = detail::minimize_barrier(objective, x0, barrier);
  const Matrix tau = hermitian_part(coords.full(outcome.x));

  DistanceMeasureResult out;
  out.closest_sep = DensityMatrix::trusted(dims, tau / tau.trace().real());
  out.value = std::max(0.0, relative_entropy(r, out.closest_sep.matrix()));
  out.converged = outcome.converged && std::isfinite(out.value);
  out.iterations = outcome.iterations;
  return out;
}

}  // namespace

DistanceMeasureResult distance_to_sep(const DensityMatrix& rho, Distance distance, const Partition& partition,
                                      const SepSearchOptions& options) {
  partition.validate(rho.parties());
  const auto view = reduce_to_partition(rho.matrix(), rho.dims(), partition);
  if (min_eigenvalue(partial_transpose(view.mat, view.dims, view.second)) >= -kPptExitTol) {
    DistanceMeasureResult out;
    out.value = 0.0;
    out.closest_sep = DensityMatrix::trusted(view.dims, view.mat);
    out.converged = true;
    return out;
  }
  if (options.warm_start && options.warm_start->rows() != view.mat.rows())
    throw Error("distance_to_sep: warm start has the wrong dimension");
  return distance == Distance::Trace ? trace_sep(view.mat, view.dims, view.second, options)
                                     : relent_sep(view.mat, view.dims, view.second, options);
}

MixingIdentity mixing_identity_check(const DensityMatrix& rho, double p, const Partition& partition) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("mixing_identity_check: p must lie in [0, 1]");
  partition.validate(rho.parties());
  const auto view = reduce_to_partition(rho.matrix(), rho.dims(), partition);
  const auto reduced = DensityMatrix::trusted(view.dims, view.mat);
  Partition local;
  for (int party : partition.first)
    local.first.push_back(static_cast<int>(std::find(view.covered.begin(), view.covered.end(), party) -
                                           view.covered.begin()));
  local.second = view.second;

  const auto base = distance_to_sep(reduced, Distance::Trace, local);
  const Matrix mix = (1.0 - p) * reduced.matrix() + p * base.closest_sep.matrix();
  const auto mixed = distance_to_sep(DensityMatrix::trusted(view.dims, mix), Distance::Trace, local);
  return {mixed.value, (1.0 - p) * base.value, base.converged && mixed.converged};
}

}  // namespace epsent
