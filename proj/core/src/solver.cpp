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

#include "epsent/solver.hpp"

#include <algorithm>
#include <cmath>

#include "epsent/error.hpp"
#include "solver_detail.hpp"

namespace epsent {

namespace detail {

bool covers_all(const Partition& partition, int parties) {
  return static_cast<int>(partition.covered().size()) == parties;
}

Partition local_partition(const Partition& partition, const ReducedView& view) {
  const auto local = [&](int party) {
    return static_cast<int>(std::find(view.covered.begin(), view.covered.end(), party) - view.covered.begin());
  };
  Partition out;
  for (int p : partition.first) out.first.push_back(local(p));
  for (int p : partition.second) out.second.push_back(local(p));
  return out;
}

Matrix tensor_in_order(const Matrix& a, const std::vector<int>& a_parties, const Matrix& b, const Dims& dims) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> order = a_parties;
  for (int p = 0; p < n; ++p)
    if (std::find(a_parties.begin(), a_parties.end(), p) == a_parties.end()) order.push_back(p);
  const Matrix product = kron(a, b);
  if (std::is_sorted(order.begin(), order.end())) return product;

  // Strides of each original party inside the product's index.
  std::vector<int> stride_in(static_cast<std::size_t>(n));
  int s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride_in[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = s;
    s *= dims[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  }
  const int total = s;
  std::vector<int> map(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    int rest = i;
    int src = 0;
    for (int p = n - 1; p >= 0; --p) {
      const int d = dims[static_cast<std::size_t>(p)];
      src += (rest % d) * stride_in[static_cast<std::size_t>(p)];
      rest /= d;
    }
    map[static_cast<std::size_t>(i)] = src;
  }
  Matrix out(total, total);
  for (int j = 0; j < total; ++j)
    for (int i = 0; i < total; ++i)
      out(i, j) = product(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  return out;
}

Matrix lift_covered(const Matrix& covered_state, const ReducedView& view, const Matrix& rho, const Dims& dims) {
  if (view.full) return covered_state;
  std::vector<int> rest;
  for (int p = 0; p < static_cast<int>(dims.size()); ++p)
    if (std::find(view.covered.begin(), view.covered.end(), p) == view.covered.end()) rest.push_back(p);
  return tensor_in_order(covered_state, view.covered, epsent::partial_trace(rho, dims, rest), dims);
}

Matrix random_state(int dim, Rng& rng) { return random_density_matrix(dim, 1 + rng.index(dim), rng); }

Matrix random_direction(int dim, Rng& rng) {
  Matrix h = ginibre(dim, dim, rng);
  h = hermitian_part(h);
  h -= (h.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  const double norm = h.norm();
  return norm > 0.0 ? Matrix(h / norm) : h;
}

}  // namespace detail

namespace {

using detail::Best;

constexpr int kProjectionIters = 60;
constexpr double kProjectionTol = 1e-10;
constexpr int kCheckEvery = 20;

bool is_negativity(Measure m) { return m == Measure::Negativity || m == Measure::SquaredNegativity; }
bool is_distance(Measure m) { return m == Measure::TraceDistToSep || m == Measure::RelEntToSep; }

struct SupportMap {
  Matrix projector;
  Matrix filler;
  bool nontrivial = false;
};

SupportMap local_support_map(const DensityMatrix& rho) {
  SupportMap map{Matrix::Ones(1, 1), Matrix::Ones(1, 1), false};
  for (int party = 0; party < rho.parties(); ++party) {
    const int keep[] = {party};
    const auto es = hermitian_eigen_sym(epsent::partial_trace(rho.matrix(), rho.dims(), keep));
    const auto d = es.values.size();
    Matrix p = Matrix::Zero(d, d);
    int rank = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (es.values(i) > kSupportTol) {
        p += es.vectors.col(i) * es.vectors.col(i).adjoint();
        ++rank;
      }
    }
    if (rank < d) map.nontrivial = true;
    map.projector = kron(map.projector, p);
    map.filler = kron(map.filler, p / static_cast<double>(rank));
  }
  return map;
}

SupportPreprocess apply_support_map(const SupportMap& map, const Dims& dims, const Matrix& sigma) {
  SupportPreprocess out;
  out.nontrivial = map.nontrivial;
  const Matrix projected = map.projector * sigma * map.projector;
  out.weight = projected.trace().real();
  if (out.weight < 1e-12) {
    out.degenerate = true;
    out.state = DensityMatrix::trusted(dims, map.filler);
    return out;
  }
  out.state = DensityMatrix::trusted(dims, hermitian_part(projected + (1.0 - out.weight) * map.filler));
  return out;
}

// Trace-ball minimization on one problem instance.
class TraceBallSolver {
 public:
  TraceBallSolver(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball, const SolverCfg& cfg)
      : rho_(rho), measure_(measure), ball_(ball), cfg_(cfg), eval_(measure, rho.dims()) {
    if (cfg.preprocess) {
      support_ = local_support_map(rho);
      use_support_ = support_.nontrivial;
    }
  }

  SolveResult run();

 private:
  // Records a candidate; it must already be a state inside the ball.
  void offer(const Matrix& sigma) {
    const Matrix s = use_support_ ? apply_support_map(support_, rho_.dims(), sigma).state.matrix() : sigma;
    best_.offer(eval_.value(s), s);
  }
  Matrix feasible(const Matrix& sigma, bool& converged) const {
    const auto fp = project_feasible(ball_, sigma, kProjectionIters, kProjectionTol);
    converged = fp.converged;
    const Matrix& s = fp.state.matrix();
    return use_support_ ? apply_support_map(support_, rho_.dims(), s).state.matrix() : s;
  }
  void subgradient(const Matrix& start, int iterations);
  bool polish();
  bool solve_partial_cover();

  const DensityMatrix& rho_;
  const MeasureKind& measure_;
  const BallSpec& ball_;
  const SolverCfg& cfg_;
  MeasureEvaluator eval_;
  SupportMap support_;
  bool use_support_ = false;
  Best best_;
};

void TraceBallSolver::subgradient(const Matrix& start, int iterations) {
  const double s0 = cfg_.step.s0 > 0.0 ? cfg_.step.s0 : ball_.epsilon;
  Matrix sigma = start;
  for (int k = 1; k <= iterations && best_.value > 0.0; ++k) {
    const auto vg = eval_.value_and_subgradient(sigma);
    best_.offer(vg.value, sigma);
    const double norm = vg.gradient.norm();
    if (!(norm > 1e-14)) break;
    const double step = s0 / std::pow(static_cast<double>(k), cfg_.step.power);
    bool ok = true;
    sigma = feasible(sigma - (step / norm) * vg.gradient, ok);
  }
  offer(sigma);
}

// ADMM on  min ||Y||_1  s.t.  Y = X^Gamma, X = W, X in D, W in ball.
// Same minimizer for the negativity and its square.
bool TraceBallSolver::polish() {
  const auto view = reduce_to_partition(rho_.matrix(), rho_.dims(), measure_.partition);
  const PartialTransposer pt(view.dims, view.second);
  const auto n = best_.state.rows();
  Matrix x = best_.state;
  Matrix y = pt(x);
  Matrix w = x;
  Matrix u = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  double beta = 1.0;
  for (int it = 1; it <= cfg_.polish_iters; ++it) {
    x = project_to_density(0.5 * (pt(y - u) + (w - v)));
    const Matrix xg = pt(x);
    const Matrix y_prev = y;
    const Matrix w_prev = w;
    y = soft_threshold(xg + u, 1.0 / (2.0 * beta));
    w = project_ball(ball_, x + v);
    u += xg - y;
    v += x - w;
    if (it % kCheckEvery != 0) continue;
    offer(shrink_into_ball(ball_, x));
    const double primal = std::max((xg - y).norm(), (x - w).norm());
    const double dual = beta * std::max((y - y_prev).norm(), (w - w_prev).norm());
    if (primal < 1e-10 && dual < 1e-10) return true;
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
  offer(shrink_into_ball(ball_, x));
  return false;
}

// The measure only sees the covered parties. Every state in the ball
// reduces into the reduced ball, so the reduced optimum is a lower bound;
// rho + (sigma_red - rho_red) (x) rho_rest keeps the distance and has the
// reduced optimum as marginal whenever it is positive.
bool TraceBallSolver::solve_partial_cover() {
  const auto view = reduce_to_partition(rho_.matrix(), rho_.dims(), measure_.partition);
  const auto reduced = DensityMatrix::trusted(view.dims, view.mat);
  const MeasureKind local{measure_.kind, detail::local_partition(measure_.partition, view)};
  SolverCfg sub = cfg_;
  sub.oracle_samples = 0;
  sub.preprocess = false;
  const auto red = eps_measure(reduced, local, BallSpec{Distance::Trace, ball_.epsilon, reduced}, sub);

  const Matrix delta = detail::lift_covered(red.witness.matrix() - view.mat, view, rho_.matrix(), rho_.dims());
  // Roundoff on a kernel of rho (e.g. a pure tensor factor) is not a real
  // violation.
  const auto psd = [&](double t) { return min_eigenvalue(rho_.matrix() + t * delta) >= -1e-12; };
  double t = 1.0;
  if (!psd(1.0)) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (psd(mid) ? lo : hi) = mid;
    }
    t = lo;
  }
  offer(shrink_into_ball(ball_, rho_.matrix() + t * delta));
  return best_.value <= red.value + cfg_.tol;
}

SolveResult TraceBallSolver::run() {
  SolveResult out;
  const double eps = ball_.epsilon;
  const Dims& dims = rho_.dims();
  const int dim = rho_.dim();
  const double e_rho = eval_.value(rho_.matrix());
  best_.offer(e_rho, rho_.matrix());
  out.preprocessing_applied = use_support_;
  const bool full = detail::covers_all(measure_.partition, rho_.parties());

  bool converged = true;
  if (eps > 0.0 && e_rho > 0.0) {
    const auto view = reduce_to_partition(rho_.matrix(), dims, measure_.partition);
    const auto sep = distance_to_sep(DensityMatrix::trusted(view.dims, view.mat), Distance::Trace,
                                     detail::local_partition(measure_.partition, view));
    converged = sep.converged;
    if (full && sep.value > 0.0)
      out.upper_bound_thm4 = std::clamp((1.0 - eps / sep.value) * e_rho, 0.0, e_rho);

    // Starts: rho, the mixing candidates toward the closest PPT state, and
    // random feasible points.
    std::vector<Matrix> starts{rho_.matrix()};
    const Matrix target = detail::lift_covered(sep.closest_sep.matrix(), view, rho_.matrix(), dims);
    const double reach = trace_distance(rho_.matrix(), target);
    if (reach > 0.0) {
      const double p_max = std::min(1.0, eps / reach);
      for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        const double p = frac * p_max;
        starts.push_back(shrink_into_ball(ball_, (1.0 - p) * rho_.matrix() + p * target));
      }
    }
    Rng rng(derive_seed(cfg_.seed, 0x5717));
    for (int r = 0; r < cfg_.restarts; ++r)
      starts.push_back(shrink_into_ball(ball_, detail::random_state(dim, rng)));
    for (const Matrix& s : starts) offer(s);

    if (!full) converged = solve_partial_cover() && converged;

    if (is_distance(measure_.kind)) {
      // Each evaluation is an inner optimization: refine the best start only.
      subgradient(best_.state, std::min(cfg_.max_iters, 10));
    } else {
      for (const Matrix& s : starts) {
        if (best_.value <= 0.0) break;
        subgradient(s, cfg_.max_iters);
      }
    }
    if (full && is_negativity(measure_.kind) && cfg_.polish_iters > 0 && best_.value > 0.0)
      converged = polish() && converged;
  }

  if (cfg_.oracle_samples > 0) {
    const auto oracle = sampling_oracle_search(rho_, measure_, ball_, cfg_.oracle_samples, cfg_.seed);
    out.oracle_value = oracle.value;
    best_.offer(oracle.value, oracle.best.matrix());
  }
  if (eps == 0.0 && full) out.upper_bound_thm4 = e_rho;
  if (e_rho <= 0.0 && full) out.upper_bound_thm4 = 0.0;

  out.value = best_.value;
  out.witness = DensityMatrix::trusted(dims, hermitian_part(best_.state));
  out.converged = converged;
  if (out.upper_bound_thm4) out.within_upper_bound = out.value <= *out.upper_bound_thm4 + cfg_.tol;
  return out;
}

}  // namespace

void SolverCfg::validate() const {
  if (max_iters < 1) throw Error("solver: max_iters must be at least 1");
  if (!(tol > 0.0)) throw Error("solver: tol must be positive");
  if (restarts < 0) throw Error("solver: restarts must be nonnegative");
  if (polish_iters < 0) throw Error("solver: polish_iters must be nonnegative");
  if (oracle_samples < 0) throw Error("solver: oracle_samples must be nonnegative");
  if (!(step.s0 >= 0.0) || !(step.power > 0.0)) throw Error("solver: invalid step schedule");
}

SolveResult eps_measure(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball,
                        const SolverCfg& cfg) {
  cfg.validate();
  ball.validate();
  measure.validate(rho.dims());
  if (ball.center.dims() != rho.dims() || (ball.center.matrix() - rho.matrix()).norm() > 1e-12)
    throw Error("eps_measure: the ball must be centered at rho");
  if (ball.distance == Distance::RelEnt) return relent_eps_measure(rho, measure, ball.epsilon, cfg);
  return TraceBallSolver(rho, measure, ball, cfg).run();
}

SupportPreprocess preprocess_local_support(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw Error("preprocess_local_support: dims do not match");
  return apply_support_map(local_support_map(rho), rho.dims(), sigma.matrix());
}

Thm4Bound thm4_upper_bound(const DensityMatrix& rho, const MeasureKind& measure, double epsilon) {
  measure.validate(rho.dims());
  if (!(epsilon >= 0.0)) throw Error("thm4_upper_bound: epsilon must be nonnegative");
  Thm4Bound out;
  out.base_value = evaluate(measure, rho);
  const auto sep = distance_to_sep(rho, Distance::Trace, measure.partition);
  out.distance_to_sep = sep.value;
  out.converged = sep.converged;
  if (sep.value <= 0.0)
    out.value = out.base_value;
  else
    out.value = std::clamp((1.0 - epsilon / sep.value) * out.base_value, 0.0, out.base_value);
  return out;
}

LowerBoundReport thm4_lower_bound_check(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                                        int n_probe, const SolverCfg& cfg) {
  const auto solved = eps_measure(rho, measure, BallSpec{Distance::Trace, epsilon, rho}, cfg);
  return thm4_lower_bound_check(rho, measure, epsilon, n_probe, solved, cfg);
}

LowerBoundReport thm4_lower_bound_check(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                                        int n_probe, const SolveResult& solved, const SolverCfg& cfg) {
  measure.validate(rho.dims());
  if (n_probe < 0) throw Error("thm4_lower_bound_check: n_probe must be nonnegative");
  LowerBoundReport out;
  out.probes_requested = n_probe + 2;
  out.solver_value = solved.value;
  out.tol = cfg.tol;
  const auto e_d = distance_to_sep(rho, Distance::Trace, measure.partition);
  out.level = std::max(0.0, e_d.value - epsilon);
  MeasureEvaluator eval(measure, rho.dims());
  double best = std::numeric_limits<double>::infinity();

  // Mixing omega toward its closest PPT state scales E_D linearly, so one
  // mixing weight lands exactly on the level.
  const auto probe = [&](const Matrix& omega) {
    const auto view = reduce_to_partition(omega, rho.dims(), measure.partition);
    const auto sep = distance_to_sep(DensityMatrix::trusted(view.dims, view.mat), Distance::Trace,
                                     detail::local_partition(measure.partition, view));
    // Witnesses sit on the level set itself, so allow for the E_D accuracy.
    if (sep.value < out.level - 1e-7 || (sep.value <= 0.0 && out.level > 0.0)) {
      ++out.probes_skipped;
      return;
    }
    const double s = sep.value > 0.0 ? std::max(0.0, 1.0 - out.level / sep.value) : 1.0;
    const Matrix target = detail::lift_covered(sep.closest_sep.matrix(), view, omega, rho.dims());
    best = std::min(best, eval.value((1.0 - s) * omega + s * target));
    ++out.probes_used;
  };

  probe(rho.matrix());
  probe(solved.witness.matrix());
  Rng rng(derive_seed(cfg.seed, 0x10b3));
  for (int k = 0; k < n_probe; ++k) probe(detail::random_state(rho.dim(), rng));
  out.min_probe_value = out.probes_used > 0 ? best : 0.0;
  out.consistent = out.probes_used > 0 && out.min_probe_value <= out.solver_value + out.tol;
  return out;
}

}  // namespace epsent
