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

// Minimization over { sigma : S(sigma || rho) <= eps }. Every candidate
// lives on the support of rho (elsewhere the relative entropy is infinite).

#include <algorithm>
#include <cmath>

#include "barrier.hpp"
#include "epsent/error.hpp"
#include "epsent/solver.hpp"
#include "solver_detail.hpp"

namespace epsent {
namespace {

using detail::Best;

constexpr double kInvLn2 = 1.4426950408889634;
constexpr int kBisection = 40;

class RelentSolver {
 public:
  RelentSolver(const DensityMatrix& rho, const MeasureKind& measure, double epsilon, const SolverCfg& cfg)
      : rho_(rho), measure_(measure), eps_(epsilon), cfg_(cfg), eval_(measure, rho.dims()) {
    const auto es = hermitian_eigen_sym(rho.matrix());
    int k = 0;
    while (k < es.values.size() && es.values(k) > kSupportTol) ++k;
    support_ = es.vectors.leftCols(k);
    RealVector logs(k);
    for (int i = 0; i < k; ++i) logs(i) = std::log2(es.values(i));
    log_rho_inner_ = Matrix(logs.cast<Complex>().asDiagonal());
    rho_inner_ = Matrix(es.values.head(k).cast<Complex>().asDiagonal());
  }

  SolveResult run();

 private:
  int k() const { return static_cast<int>(support_.cols()); }
  Matrix inner(const Matrix& full) const { return support_.adjoint() * full * support_; }
  Matrix outer(const Matrix& in) const { return support_ * in * support_.adjoint(); }

  // S(V s V^dagger || rho) for an inner state s.
  double divergence(const Matrix& s) const {
    const auto es = hermitian_eigen_sym(s);
    double neg_entropy = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      if (es.values(i) > 0.0) neg_entropy += es.values(i) * std::log2(es.values(i));
    return std::max(0.0, neg_entropy - (s.cwiseProduct(log_rho_inner_.transpose())).sum().real());
  }

  // Largest t in [0, 1] with rho + t (s - rho) inside the ball (inner space).
  Matrix pull_inside(const Matrix& s) const {
    if (divergence(s) <= eps_) return s;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kBisection; ++it) {
      const double mid = 0.5 * (lo + hi);
      (divergence(rho_inner_ + mid * (s - rho_inner_)) <= eps_ ? lo : hi) = mid;
    }
    return rho_inner_ + lo * (s - rho_inner_);
  }

  void offer_inner(const Matrix& s) { best_.offer(eval_.value(outer(s)), s); }
  void penalty_descent(const Matrix& start);
  bool polish_negativity();
  bool polish_relent_to_sep();

  const DensityMatrix& rho_;
  const MeasureKind& measure_;
  double eps_;
  const SolverCfg& cfg_;
  MeasureEvaluator eval_;
  Matrix support_;
  Matrix log_rho_inner_;
  Matrix rho_inner_;
  Best best_;  // states are kept in inner coordinates
};

// Subgradient steps on E(sigma) + mu max(0, S(sigma || rho) - eps) with mu
// increasing between stages; iterates are pulled into the ball before they
// are recorded.
void RelentSolver::penalty_descent(const Matrix& start) {
  const double s0 = cfg_.step.s0 > 0.0 ? cfg_.step.s0 : std::min(0.5, std::sqrt(eps_));
  Matrix s = start;
  int k_total = 0;
  for (double mu : {1.0, 10.0, 100.0}) {
    for (int it = 1; it <= cfg_.max_iters && best_.value > 0.0; ++it) {
      ++k_total;
      const auto vg = eval_.value_and_subgradient(outer(s));
      Matrix g = inner(vg.gradient);
      if (divergence(s) > eps_) {
        const Matrix log_s =
            spectral_apply(hermitian_eigen_sym(s), [](double x) { return std::log2(std::max(x, 1e-12)); });
        g += mu * (log_s - log_rho_inner_);
      }
      g -= (g.trace() / static_cast<double>(k())) * Matrix::Identity(k(), k());
      const double norm = g.norm();
      if (!(norm > 1e-14)) break;
      const double step = s0 / std::pow(static_cast<double>(k_total), cfg_.step.power);
      s = project_to_density(s - (step / norm) * g);
      offer_inner(pull_inside(s));
    }
  }
}

// Epigraph form of the negativity, N(sigma) = min tr P over P >= 0 with
// sigma^Gamma + P >= 0, under a log barrier that also keeps
// S(sigma || rho) < eps and sigma > 0 on the support of rho.
bool RelentSolver::polish_negativity() {
  const auto view = reduce_to_partition(rho_.matrix(), rho_.dims(), measure_.partition);
  if (!view.full) return true;
  const PartialTransposer pt(view.dims, view.second);
  const int d = rho_.dim();
  const detail::HermitianCoords cs(Matrix::Identity(k(), k()), false);
  const detail::HermitianCoords cp(Matrix::Identity(d, d), true);
  const int ns = cs.size();

  const detail::BarrierObjective objective = [&](const RealVector& x, double t, double& value, RealVector* grad) {
    const Matrix s = cs.inner(x.head(ns));
    const auto es = hermitian_eigen_sym(s);
    if (!(es.values(es.values.size() - 1) > 0.0)) return false;
    double neg_entropy = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) neg_entropy += es.values(i) * std::log2(es.values(i));
    const double slack = eps_ - (neg_entropy - (s.cwiseProduct(log_rho_inner_.transpose())).sum().real());
    if (!(slack > 0.0)) return false;
    const Matrix p = cp.inner(x.tail(x.size() - ns));
    const auto ep = hermitian_eigen_sym(p);
    if (!(ep.values(d - 1) > 0.0)) return false;
    const Matrix q = pt(outer(s)) + p;
    const auto eq = hermitian_eigen_sym(q);
    if (!(eq.values(d - 1) > 0.0)) return false;
    double barrier = std::log(slack);
    for (Eigen::Index i = 0; i < es.values.size(); ++i) barrier += std::log(es.values(i));
    for (int i = 0; i < d; ++i) barrier += std::log(ep.values(i)) + std::log(eq.values(i));
    value = p.trace().real() - t * barrier;
    if (grad) {
      const auto inv = [](double v) { return 1.0 / v; };
      const Matrix q_inv = spectral_apply(eq, inv);
      const Matrix log_s = spectral_apply(es, [](double v) { return std::log2(v); });
      const Matrix g_s =
          -t * (spectral_apply(es, inv) + inner(pt(q_inv))) + (t / slack) * (log_s - log_rho_inner_);
      const Matrix g_p = Matrix::Identity(d, d) - t * (spectral_apply(ep, inv) + q_inv);
      grad->resize(x.size());
      grad->head(ns) = cs.pull_inner_gradient(g_s);
      grad->tail(x.size() - ns) = cp.pull_inner_gradient(g_p);
    }
    return true;
  };

  const Matrix s0 = 0.999 * best_.state + 0.001 * rho_inner_;
  const auto pt_spec = hermitian_eigen_sym(pt(outer(s0)));
  const Matrix p0 = spectral_apply(pt_spec, [](double v) { return std::max(-v, 0.0) + 1e-3; });
  RealVector x0(ns + cp.size());
  x0.head(ns) = cs.coords_of_inner(s0);
  x0.tail(cp.size()) = cp.coords_of_inner(p0);
  double probe = 0.0;
  detail::BarrierOptions options;
  options.t_start = 1e-2;
  if (!objective(x0, options.t_start, probe, nullptr)) return false;
  const auto outcome = detail::minimize_barrier(objective, x0, options);
  const Matrix s = hermitian_part(cs.inner(outcome.x.head(ns)));
  offer_inner(pull_inside(s));
  return outcome.converged;
}

// Jointly convex problem min S(sigma || tau) over sigma in the ball and
// PPT tau, with barriers on sigma > 0, tau > 0, tau^Gamma > 0 and the ball.
bool RelentSolver::polish_relent_to_sep() {
  const auto view = reduce_to_partition(rho_.matrix(), rho_.dims(), measure_.partition);
  if (!view.full) return true;
  const PartialTransposer pt(view.dims, view.second);
  const int d = rho_.dim();
  const detail::HermitianCoords cs(Matrix::Identity(k(), k()), false);
  const detail::HermitianCoords ct(Matrix::Identity(d, d), false);
  const int ns = cs.size();

  const detail::BarrierObjective objective = [&](const RealVector& x, double t, double& value, RealVector* grad) {
    const Matrix s = cs.inner(x.head(ns));
    const auto es = hermitian_eigen_sym(s);
    if (!(es.values(es.values.size() - 1) > 0.0)) return false;
    double neg_entropy = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) neg_entropy += es.values(i) * std::log2(es.values(i));
    const double slack = eps_ - (neg_entropy - (s.cwiseProduct(log_rho_inner_.transpose())).sum().real());
    if (!(slack > 0.0)) return false;
    const Matrix tau = ct.inner(x.tail(x.size() - ns));
    const auto et = hermitian_eigen_sym(tau);
    if (!(et.values(d - 1) > 0.0)) return false;
    const auto eg = hermitian_eigen_sym(pt(tau));
    if (!(eg.values(d - 1) > 0.0)) return false;
    const Matrix sigma = outer(s);
    const Matrix rot = et.vectors.adjoint() * sigma * et.vectors;
    double cross = 0.0;
    double barrier = std::log(slack);
    for (int i = 0; i < d; ++i) {
      cross += rot(i, i).real() * std::log2(et.values(i));
      barrier += std::log(et.values(i)) + std::log(eg.values(i));
    }
    for (Eigen::Index i = 0; i < es.values.size(); ++i) barrier += std::log(es.values(i));
    value = neg_entropy - cross - t * barrier;
    if (grad) {
      const auto inv = [](double v) { return 1.0 / v; };
      const Matrix log_s = spectral_apply(es, [](double v) { return std::log2(v); });
      const Matrix log_tau = spectral_apply(et, [](double v) { return std::log2(v); });
      const Matrix g_s = log_s - inner(log_tau) - t * spectral_apply(es, inv) + (t / slack) * (log_s - log_rho_inner_);
      const Matrix g_t =
          -kInvLn2 * detail::log_trace_gradient(et, sigma) - t * (spectral_apply(et, inv) + pt(spectral_apply(eg, inv)));
      grad->resize(x.size());
      grad->head(ns) = cs.pull_inner_gradient(g_s);
      grad->tail(x.size() - ns) = ct.pull_inner_gradient(g_t);
    }
    return true;
  };

  const Matrix s0 = 0.999 * best_.state + 0.001 * rho_inner_;
  const auto sep = distance_to_sep(DensityMatrix::trusted(rho_.dims(), hermitian_part(outer(s0))), Distance::RelEnt,
                                   measure_.partition);
  const Matrix tau0 = 0.95 * sep.closest_sep.matrix() + (0.05 / d) * Matrix::Identity(d, d);
  RealVector x0(ns + ct.size());
  x0.head(ns) = cs.coords_of_inner(s0);
  x0.tail(ct.size()) = ct.coords_of_inner(tau0);
  double probe = 0.0;
  detail::BarrierOptions options;
  options.t_start = 1e-3;
  if (!objective(x0, options.t_start, probe, nullptr)) return false;
  const auto outcome = detail::minimize_barrier(objective, x0, options);
  const Matrix s = hermitian_part(cs.inner(outcome.x.head(ns)));
  offer_inner(pull_inside(s));
  return outcome.converged;
}

SolveResult RelentSolver::run() {
  SolveResult out;
  const Matrix rho_in = rho_inner_;
  const double e_rho = eval_.value(rho_.matrix());
  best_.offer(e_rho, rho_in);
  bool converged = true;

  if (eps_ > 0.0 && e_rho > 0.0) {
    // Mixing candidates toward separable targets, compressed to the support.
    std::vector<Matrix> targets;
    const auto view = reduce_to_partition(rho_.matrix(), rho_.dims(), measure_.partition);
    const auto local = detail::local_partition(measure_.partition, view);
    const auto reduced = DensityMatrix::trusted(view.dims, view.mat);
    for (Distance distance : {Distance::Trace, Distance::RelEnt}) {
      const auto sep = distance_to_sep(reduced, distance, local);
      targets.push_back(detail::lift_covered(sep.closest_sep.matrix(), view, rho_.matrix(), rho_.dims()));
    }
    targets.push_back(Matrix::Identity(rho_.dim(), rho_.dim()) / static_cast<double>(rho_.dim()));
    Rng rng(derive_seed(cfg_.seed, 0x2e1e));
    for (int r = 0; r < cfg_.restarts; ++r) targets.push_back(detail::random_state(rho_.dim(), rng));

    for (const Matrix& target : targets) {
      Matrix t_in = inner(target);
      const double mass = t_in.trace().real();
      if (mass < 1e-12) continue;
      t_in /= mass;
      const Matrix edge = pull_inside(t_in);
      offer_inner(edge);
      for (double frac : {0.25, 0.5, 0.75}) offer_inner(rho_in + frac * (edge - rho_in));
    }

    // Every evaluation of E_R is itself a barrier solve, so the joint barrier
    // goes first and the penalty stage only runs if it fails.
    const bool joint = measure_.kind == Measure::RelEntToSep && view.full;
    if (joint && best_.value > 0.0) converged = polish_relent_to_sep();
    if (best_.value > 0.0 && (!joint || !converged)) penalty_descent(best_.state);
    if (best_.value > 0.0) {
      if (measure_.kind == Measure::Negativity || measure_.kind == Measure::SquaredNegativity)
        converged = polish_negativity();
      else if (measure_.kind == Measure::RelEntToSep && !converged)
        converged = polish_relent_to_sep();
    }
  }

  out.value = best_.value;
  out.witness = DensityMatrix::trusted(rho_.dims(), hermitian_part(outer(best_.state)));
  out.converged = converged;
  return out;
}

}  // namespace

SolveResult relent_eps_measure(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                               const SolverCfg& cfg) {
  cfg.validate();
  measure.validate(rho.dims());
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw Error("relent_eps_measure: epsilon must be nonnegative");
  return RelentSolver(rho, measure, epsilon, cfg).run();
}

}  // namespace epsent
