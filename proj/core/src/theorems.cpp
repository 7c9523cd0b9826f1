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

#include "epsent/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "epsent/error.hpp"
#include "epsent/locc.hpp"
#include "epsent/parallel.hpp"
#include "epsent/random.hpp"
#include "epsent/states.hpp"
#include "solver_detail.hpp"

namespace epsent {
namespace {

// lhs - rhs - tolerance of one assertion; positive means violated.
struct Trial {
  std::uint64_t seed = 0;
  double slack = -std::numeric_limits<double>::infinity();
  bool raw = false;
  bool confirmed = false;
};

void absorb(Trial& t, double raw_slack, double final_slack) {
  t.raw = t.raw || raw_slack > 0.0;
  t.confirmed = t.confirmed || final_slack > 0.0;
  t.slack = std::max(t.slack, final_slack);
}

PropertyReport merge(std::string id, double tolerance, const std::vector<Trial>& trials) {
  PropertyReport out;
  out.property_id = std::move(id);
  out.tolerance = tolerance;
  out.n_trials = static_cast<int>(trials.size());
  out.worst_violation = -std::numeric_limits<double>::infinity();
  for (const Trial& t : trials) {
    if (t.raw) ++out.raw_violations;
    if (t.confirmed) {
      ++out.n_failures;
      out.failure_seeds.push_back(t.seed);
    }
    out.worst_violation = std::max(out.worst_violation, t.slack);
  }
  if (trials.empty()) out.worst_violation = 0.0;
  return out;
}

SolverCfg solver_for(const SuiteConfig& cfg, std::uint64_t seed) {
  SolverCfg s = cfg.solver;
  s.seed = seed;
  return s;
}

SolverCfg refined_for(const SuiteConfig& cfg, std::uint64_t seed, Distance distance) {
  SolverCfg s = solver_for(cfg, derive_seed(seed, 0x7e1));
  s.restarts = std::max(1, s.restarts) * cfg.refine_factor;
  s.max_iters *= 2;
  if (distance == Distance::Trace) s.oracle_samples = cfg.refine_oracle_samples;
  return s;
}

double solve(const DensityMatrix& rho, const MeasureKind& kind, double eps, Distance distance, const SolverCfg& s) {
  return eps_measure(rho, kind, BallSpec{distance, eps, rho}, s).value;
}

// The smaller of the original value and a refined re-solve.
double refine(double value, const DensityMatrix& rho, const MeasureKind& kind, double eps, const SuiteConfig& cfg,
              std::uint64_t seed) {
  return std::min(value, solve(rho, kind, eps, cfg.distance, refined_for(cfg, seed, cfg.distance)));
}

MeasureKind suite_kind(const SuiteConfig& cfg) { return {cfg.measure, bipartition()}; }

template <class F>
std::vector<Trial> run_trials(int n, std::uint64_t seed, F&& trial) {
  return parallel_map(static_cast<std::size_t>(std::max(n, 0)), [&](std::size_t i) {
    Trial t;
    t.seed = derive_seed(seed, i);
    trial(static_cast<int>(i), t);
    return t;
  });
}

DensityMatrix perturbed(const DensityMatrix& rho, double eta, std::uint64_t seed) {
  if (eta <= 0.0) return rho;
  Rng rng(seed);
  const int dim = rho.dim();
  for (double scale = 4.0 * eta;; scale *= 2.0) {
    const Matrix x = project_to_density(rho.matrix() + scale * detail::random_direction(dim, rng));
    const double d = trace_distance(rho.matrix(), x);
    if (d >= eta) return DensityMatrix::trusted(rho.dims(), hermitian_part(rho.matrix() + (eta / d) * (x - rho.matrix())));
    if (scale > 1e3) throw Error("perturbation: cannot reach the requested distance");
  }
}

}  // namespace

DensityMatrix suite_state(std::uint64_t seed, bool entangled, bool full_rank) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    const int rank = full_rank ? 4 : 1 + static_cast<int>(derive_seed(seed, attempt) % 4);
    auto rho = random_density({2, 2}, rank, derive_seed(seed, 1000 + attempt));
    if (!entangled || negativity(rho.matrix(), rho.dims(), bipartition()) > 1e-3) return rho;
  }
  throw Error("suite_state: no entangled draw found");
}

PropertyReport ContinuityReport::summary() const {
  PropertyReport out;
  out.property_id = property_id;
  out.n_trials = static_cast<int>(entries.size());
  out.raw_violations = raw_violations;
  out.n_failures = n_failures;
  out.worst_violation = worst_violation;
  out.tolerance = tolerance;
  out.details.emplace_back("m_max", m_max);
  return out;
}

PropertyReport check_vos(int n, double epsilon, const SuiteConfig& cfg) {
  static constexpr Measure kinds[] = {Measure::Negativity, Measure::SquaredNegativity, Measure::Concurrence2Q,
                                      Measure::Tangle2Q, Measure::TraceDistToSep};
  constexpr double tol = 1e-6;
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    Rng rng(t.seed);
    Matrix m;
    if (i == 0)
      m = states::maximally_mixed({2, 2}).matrix();
    else if (i == 1)
      m = random_product_matrix({2, 2}, 1 + rng.index(2), rng);
    else
      m = random_separable_matrix({2, 2}, 1 + rng.index(16), rng);
    const DensityMatrix sigma({2, 2}, m);
    const MeasureKind kind{kinds[i % 5], bipartition()};
    const double value = solve(sigma, kind, epsilon, cfg.distance, solver_for(cfg, t.seed));
    absorb(t, value - tol, value - tol);
  });
  auto out = merge(cfg.distance == Distance::Trace ? "vos" : "vos_relent", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

PropertyReport check_wem(int n, double epsilon, const SuiteConfig& cfg) {
  const double tol = 2.0 * cfg.solver_tol;
  const MeasureKind kind = suite_kind(cfg);
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    const auto rho = suite_state(t.seed, i % 2 == 0);
    ChannelSpec channel;
    if (i == 0) {
      channel = {LocalUnitary{{Matrix::Identity(2, 2), Matrix::Identity(2, 2)}}};
    } else if (i == 1) {
      Rng rng(derive_seed(t.seed, 5));
      Mix mix{1.0, {}};
      mix.sigma.weights = {1.0};
      mix.sigma.factors = {{random_density_matrix(2, 2, rng), random_density_matrix(2, 2, rng)}};
      channel = {mix};
    } else {
      channel = random_locc({2, 2}, derive_seed(t.seed, 6));
    }
    const auto out = apply(channel, rho);
    const double before = solve(rho, kind, epsilon, cfg.distance, solver_for(cfg, t.seed));
    double after = solve(out, kind, epsilon, cfg.distance, solver_for(cfg, derive_seed(t.seed, 1)));
    const double raw = after - before - tol;
    if (raw > 0.0) after = refine(after, out, kind, epsilon, cfg, t.seed);
    absorb(t, raw, after - before - tol);
  });
  auto out = merge(cfg.distance == Distance::Trace ? "wem" : "wem_relent", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

PropertyReport check_lu(int n, double epsilon, const SuiteConfig& cfg) {
  const double tol = 2.0 * cfg.solver_tol;
  const MeasureKind kind = suite_kind(cfg);
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    const auto rho = suite_state(t.seed, i % 2 == 0);
    Rng rng(derive_seed(t.seed, 7));
    const ChannelSpec channel{LocalUnitary{{haar_unitary(2, rng), haar_unitary(2, rng)}}};
    const auto rotated = apply(channel, rho);
    double a = solve(rho, kind, epsilon, cfg.distance, solver_for(cfg, t.seed));
    double b = solve(rotated, kind, epsilon, cfg.distance, solver_for(cfg, derive_seed(t.seed, 1)));
    const double raw = std::abs(a - b) - tol;
    if (raw > 0.0) {
      if (a > b)
        a = refine(a, rho, kind, epsilon, cfg, t.seed);
      else
        b = refine(b, rotated, kind, epsilon, cfg, t.seed);
    }
    absorb(t, raw, std::abs(a - b) - tol);
  });
  auto out = merge(cfg.distance == Distance::Trace ? "lu" : "lu_relent", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

PropertyReport check_moa(double epsilon, const SuiteConfig& cfg) {
  constexpr double tol = 1e-4;
  const MeasureKind kind{Measure::Negativity, bipartition()};
  const SolverCfg s = solver_for(cfg, cfg.seed);
  const auto rho_ent = states::bell();
  const auto rho_sep = states::maximally_mixed({2, 2});
  const double e_eps_ent = solve(rho_ent, kind, epsilon, Distance::Trace, s);

  PropertyReport out;
  out.property_id = "moa";
  out.tolerance = tol;
  out.n_trials = 1;
  out.details.emplace_back("epsilon", epsilon);
  out.details.emplace_back("eps_measure_ent", e_eps_ent);
  if (!(e_eps_ent > 1e-9)) {
    // The construction needs E_eps(rho_ent) > 0; with eps past E_D(rho_ent)
    // there is no counterexample to exhibit.
    out.details.emplace_back("applicable", 0.0);
    out.worst_violation = -tol;
    return out;
  }
  const auto ce = moa_counterexample(rho_ent, rho_sep, epsilon, kind, s);
  const MeasureKind big{Measure::Negativity, with_ancilla(bipartition())};
  const double e_eps_rho = solve(ce.rho, big, epsilon, Distance::Trace, s);
  const double e_rho = evaluate(big, ce.rho);

  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  const auto ensemble = apply_instrument(LocalInstrument{0, {p0, p1}}, ce.rho);
  double avg_eps = 0.0;
  double avg_base = 0.0;
  for (const auto& branch : ensemble.branches) {
    avg_eps += branch.probability * solve(branch.state, big, epsilon, Distance::Trace, s);
    avg_base += branch.probability * evaluate(big, branch.state);
  }
  const double expected = ce.eta * e_eps_ent;
  const double lhs = avg_eps - e_eps_rho;
  const double rhs = (avg_base - e_rho) + (e_rho - e_eps_rho);

  double slack = e_eps_rho - tol;                                   // E_eps(rho) vanishes
  slack = std::max(slack, std::abs(avg_eps - expected) - tol);      // branch average = eta E_eps(rho_ent)
  slack = std::max(slack, lhs - rhs - tol);                         // violation bound
  if (epsilon > 0.0) slack = std::max(slack, -(lhs - tol));         // strict violation exhibited
  out.worst_violation = slack;
  out.raw_violations = out.n_failures = slack > 0.0 ? 1 : 0;
  if (out.n_failures) out.failure_seeds.push_back(cfg.seed);
  out.details.emplace_back("eta", ce.eta);
  out.details.emplace_back("eps_measure_rho", e_eps_rho);
  out.details.emplace_back("branch_average", avg_eps);
  out.details.emplace_back("eta_times_eps_measure_ent", expected);
  out.details.emplace_back("moa_violation", lhs);
  out.details.emplace_back("violation_bound", rhs);
  return out;
}

PropertyReport check_convexity(int n, double epsilon, const SuiteConfig& cfg) {
  const double tol = 2.0 * cfg.solver_tol;
  const MeasureKind kind = suite_kind(cfg);
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    Rng rng(derive_seed(t.seed, 3));
    const auto rho1 = suite_state(derive_seed(t.seed, 1), true);
    const auto rho2 = i == 0 ? rho1 : suite_state(derive_seed(t.seed, 2), i % 2 == 0);
    const double p = i == 1 ? 0.0 : (i == 2 ? 1.0 : rng.uniform());
    const DensityMatrix mix = DensityMatrix::trusted({2, 2}, p * rho1.matrix() + (1.0 - p) * rho2.matrix());
    const double a = solve(rho1, kind, epsilon, cfg.distance, solver_for(cfg, t.seed));
    const double b = solve(rho2, kind, epsilon, cfg.distance, solver_for(cfg, derive_seed(t.seed, 4)));
    double c = solve(mix, kind, epsilon, cfg.distance, solver_for(cfg, derive_seed(t.seed, 5)));
    const double rhs = p * a + (1.0 - p) * b;
    const double raw = c - rhs - tol;
    if (raw > 0.0) c = refine(c, mix, kind, epsilon, cfg, t.seed);
    absorb(t, raw, c - rhs - tol);
  });
  auto out = merge("convexity", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

PropertyReport check_te(int n, double epsilon, const SuiteConfig& cfg) {
  const double tol = 2.0 * cfg.solver_tol;
  const MeasureKind kind = suite_kind(cfg);
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    DensityMatrix rho = suite_state(t.seed, i % 2 == 1);
    Matrix tau;
    if (i == 0) {
      tau = states::basis({2}, 0).matrix();
    } else if (i == 1) {
      tau = states::maximally_mixed({2}).matrix();
    } else {
      if (i == 2) rho = DensityMatrix::trusted({2, 2}, states::maximally_mixed({2, 2}).matrix());
      Rng rng(derive_seed(t.seed, 9));
      tau = random_density_matrix(2, 1 + rng.index(2), rng);
    }
    const auto extended = tensor(rho, DensityMatrix::trusted({2}, tau));
    double a = solve(rho, kind, epsilon, cfg.distance, solver_for(cfg, t.seed));
    double b = solve(extended, kind, epsilon, cfg.distance, solver_for(cfg, derive_seed(t.seed, 1)));
    const double raw = std::abs(a - b) - tol;
    if (raw > 0.0) {
      if (a > b)
        a = refine(a, rho, kind, epsilon, cfg, t.seed);
      else
        b = refine(b, extended, kind, epsilon, cfg, t.seed);
    }
    absorb(t, raw, std::abs(a - b) - tol);
  });
  auto out = merge("te", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

ContinuityReport check_continuity_eps(const DensityMatrix& rho, const std::vector<double>& eps_grid,
                                      const SuiteConfig& cfg) {
  const MeasureKind kind = suite_kind(cfg);
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  const double e0 = evaluate(kind, rho);
  const auto raw_values = parallel_map(grid.size(), [&](std::size_t i) {
    return solve(rho, kind, grid[i], cfg.distance, solver_for(cfg, derive_seed(cfg.seed, i)));
  });
  std::vector<double> values = raw_values;
  std::vector<bool> refined(grid.size(), false);
  const auto refine_at = [&](std::size_t i) {
    if (refined[i]) return;
    refined[i] = true;
    values[i] = refine(values[i], rho, kind, grid[i], cfg, derive_seed(cfg.seed, 100 + i));
  };

  ContinuityReport out;
  out.property_id = "continuity_eps";
  out.tolerance = 2.0 * cfg.solver_tol;
  out.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (!(grid[j] > grid[i])) continue;
      const auto evaluate_pair = [&](const std::vector<double>& v, double& lower, double& upper,
                                     double& observed, double& bound) {
        observed = v[i] - v[j];
        bound = (grid[j] - grid[i]) / grid[j] * (e0 - v[j]);
        lower = -observed - out.tolerance;
        upper = observed - bound - out.tolerance;
      };
      double lower = 0.0, upper = 0.0, observed = 0.0, bound = 0.0;
      evaluate_pair(raw_values, lower, upper, observed, bound);
      ContinuityEntry entry{grid[i], grid[j], observed, bound, 0.0, true, true};
      if (lower > 0.0 || upper > 0.0) {
        entry.raw_ok = false;
        ++out.raw_violations;
        if (lower > 0.0) refine_at(j);
        if (upper > 0.0) refine_at(i);
      }
      evaluate_pair(values, lower, upper, observed, bound);
      entry.observed = observed;
      entry.bound = bound;
      entry.ok = lower <= 0.0 && upper <= 0.0;
      if (!entry.ok) ++out.n_failures;
      out.worst_violation = std::max({out.worst_violation, lower, upper});
      out.entries.push_back(entry);
    }
  }
  if (out.entries.empty()) out.worst_violation = 0.0;
  return out;
}

ContinuityReport check_continuity_rho(const DensityMatrix& rho1, int n_perturbations, double eta, double epsilon,
                                      const SuiteConfig& cfg) {
  const MeasureKind kind = suite_kind(cfg);
  ContinuityReport out;
  out.property_id = "continuity_rho";
  out.tolerance = 2.0 * cfg.solver_tol;
  out.worst_violation = -std::numeric_limits<double>::infinity();
  const double e1_base = evaluate(kind, rho1);
  const double e1_eps = solve(rho1, kind, epsilon, cfg.distance, solver_for(cfg, cfg.seed));
  double e1_refined = std::numeric_limits<double>::quiet_NaN();

  struct Pair {
    DensityMatrix rho2;
    double base = 0.0;
    double eps = 0.0;
  };
  const auto pairs = parallel_map(static_cast<std::size_t>(std::max(n_perturbations, 0)), [&](std::size_t k) {
    Pair p;
    const auto seed = derive_seed(cfg.seed, 1 + k);
    p.rho2 = perturbed(rho1, eta, seed);
    p.base = evaluate(kind, p.rho2);
    p.eps = solve(p.rho2, kind, epsilon, cfg.distance, solver_for(cfg, seed));
    return p;
  });
  const auto assess = [&](double a, double b, double e2_base, ContinuityEntry& entry) {
    entry.m = std::max({e2_base - a, e1_base - b, 0.0});
    entry.bound = epsilon + eta > 0.0 ? eta / (epsilon + eta) * entry.m : 0.0;
    entry.observed = std::abs(b - a);
    return entry.observed - entry.bound - out.tolerance;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Pair& p = pairs[k];
    ContinuityEntry entry{eta, epsilon, 0.0, 0.0, 0.0, true, true};
    double a = e1_eps;
    double b = p.eps;
    double slack = assess(a, b, p.base, entry);
    if (slack > 0.0) {
      entry.raw_ok = false;
      ++out.raw_violations;
      if (a > b) {
        if (std::isnan(e1_refined)) e1_refined = refine(e1_eps, rho1, kind, epsilon, cfg, cfg.seed);
        a = e1_refined;
      } else {
        b = refine(b, p.rho2, kind, epsilon, cfg, derive_seed(cfg.seed, 1 + k));
      }
      slack = assess(a, b, p.base, entry);
    }
    entry.ok = slack <= 0.0;
    if (!entry.ok) ++out.n_failures;
    out.m_max = std::max(out.m_max, entry.m);
    out.worst_violation = std::max(out.worst_violation, slack);
    out.entries.push_back(entry);
  }
  if (out.entries.empty()) out.worst_violation = 0.0;
  return out;
}

PropertyReport check_lemma_mixing(int n, const SuiteConfig& cfg) {
  constexpr double tol = 5e-4;
  static constexpr double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto trials = run_trials(n * 5, cfg.seed, [&](int i, Trial& t) {
    const auto rho = suite_state(derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(i / 5)), true);
    const auto m = mixing_identity_check(rho, grid[i % 5]);
    const double slack = m.converged ? std::abs(m.lhs - m.rhs) - tol : std::numeric_limits<double>::infinity();
    absorb(t, slack, slack);
  });
  return merge("lemma_mixing", tol, trials);
}

PropertyReport check_bounds(int n, const std::vector<double>& fractions, const SuiteConfig& cfg) {
  const double tol = cfg.solver_tol;
  constexpr double closed_form_tol = 1e-3;
  const MeasureKind kind = suite_kind(cfg);
  const MeasureKind distance_kind{Measure::TraceDistToSep, bipartition()};
  const std::size_t per_state = fractions.size();
  const auto trials = run_trials(n * static_cast<int>(per_state), cfg.seed, [&](int i, Trial& t) {
    const auto rho = suite_state(derive_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(i) / per_state), true);
    const double e_d = distance_to_sep(rho, Distance::Trace, bipartition()).value;
    const double eps = fractions[static_cast<std::size_t>(i) % per_state] * e_d;
    const SolverCfg s = solver_for(cfg, t.seed);
    const auto solved = eps_measure(rho, kind, BallSpec{Distance::Trace, eps, rho}, s);
    const auto upper = thm4_upper_bound(rho, kind, eps);
    const auto lower = thm4_lower_bound_check(rho, kind, eps, 4, solved, s);
    const double closed = solve(rho, distance_kind, eps, Distance::Trace, s);
    absorb(t, solved.value - upper.value - tol, solved.value - upper.value - tol);
    const double lower_slack = lower.probes_used > 0 ? lower.min_probe_value - solved.value - tol
                                                     : std::numeric_limits<double>::infinity();
    absorb(t, lower_slack, lower_slack);
    const double cf = std::abs(closed - std::max(e_d - eps, 0.0)) - closed_form_tol;
    absorb(t, cf, cf);
  });
  return merge("bounds", tol, trials);
}

PropertyReport check_monogamy(int n, double epsilon, const SuiteConfig& cfg) {
  const double tol = 2.0 * cfg.solver_tol;
  const MeasureKind tangle{Measure::Tangle2Q, bipartition()};
  const auto trials = run_trials(n, cfg.seed, [&](int i, Trial& t) {
    DensityMatrix psi;
    if (i == 0)
      psi = states::ghz(3);
    else if (i == 1)
      psi = states::w_state();
    else if (i == 2)
      psi = states::basis({2, 2, 2}, 0);
    else
      psi = random_pure({2, 2, 2}, t.seed);
    const int keep_ac[] = {0, 2};
    const int keep_bc[] = {1, 2};
    const auto ac = partial_trace(psi, keep_ac);
    const auto bc = partial_trace(psi, keep_bc);
    const double ab_c = pure_state_tangle(psi, 2);
    SuiteConfig local = cfg;
    local.distance = Distance::Trace;
    double a = solve(ac, tangle, epsilon, Distance::Trace, solver_for(cfg, t.seed));
    double b = solve(bc, tangle, epsilon, Distance::Trace, solver_for(cfg, derive_seed(t.seed, 1)));
    const double raw = a + b - ab_c - tol;
    if (raw > 0.0) {
      a = refine(a, ac, tangle, epsilon, local, t.seed);
      b = refine(b, bc, tangle, epsilon, local, derive_seed(t.seed, 1));
    }
    absorb(t, raw, a + b - ab_c - tol);
  });
  auto out = merge("monogamy", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  const auto w = states::w_state();
  const int keep_ac[] = {0, 2};
  const int keep_bc[] = {1, 2};
  out.details.emplace_back("w_tangle_ac", evaluate(tangle, partial_trace(w, keep_ac)));
  out.details.emplace_back("w_tangle_bc", evaluate(tangle, partial_trace(w, keep_bc)));
  out.details.emplace_back("w_tangle_ab_c", pure_state_tangle(w, 2));
  return out;
}

PropertyReport check_relent_variant(int n, double epsilon, const SuiteConfig& cfg) {
  constexpr double tol = 5e-3;
  const MeasureKind kind{Measure::RelEntToSep, bipartition()};
  const auto trials = run_trials(n, cfg.seed, [&](int, Trial& t) {
    DensityMatrix rho;
    double e_r = 0.0;
    for (std::uint64_t attempt = 0;; ++attempt) {
      rho = suite_state(derive_seed(t.seed, attempt), true, true);
      e_r = distance_to_sep(rho, Distance::RelEnt, bipartition()).value;
      if (e_r > epsilon) break;
      if (attempt > 1000) throw Error("check_relent_variant: no state with E_R > eps found");
    }
    double value = relent_eps_measure(rho, kind, epsilon, solver_for(cfg, t.seed)).value;
    const double raw = value - (e_r - epsilon) - tol;
    if (raw > 0.0) value = std::min(value, relent_eps_measure(rho, kind, epsilon, refined_for(cfg, t.seed, Distance::RelEnt)).value);
    absorb(t, raw, value - (e_r - epsilon) - tol);
  });
  auto out = merge("relent_variant", tol, trials);
  out.details.emplace_back("epsilon", epsilon);
  return out;
}

namespace {

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

}  // namespace

std::string report_to_json(const PropertyReport& report) {
  nlohmann::ordered_json j;
  j["property_id"] = report.property_id;
  j["n_trials"] = report.n_trials;
  j["raw_violations"] = report.raw_violations;
  j["n_failures"] = report.n_failures;
  j["worst_violation"] = number(report.worst_violation);
  j["tolerance"] = number(report.tolerance);
  j["failure_seeds"] = report.failure_seeds;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.details) details[key] = number(value);
  j["details"] = details;
  return j.dump(2) + "\n";
}

std::string report_to_json(const ContinuityReport& report) {
  nlohmann::ordered_json j;
  j["property_id"] = report.property_id;
  j["n_entries"] = report.entries.size();
  j["raw_violations"] = report.raw_violations;
  j["n_failures"] = report.n_failures;
  j["worst_violation"] = number(report.worst_violation);
  j["tolerance"] = number(report.tolerance);
  j["m_max"] = number(report.m_max);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json row;
    row["a"] = number(e.a);
    row["b"] = number(e.b);
    row["observed"] = number(e.observed);
    row["bound"] = number(e.bound);
    row["m"] = number(e.m);
    row["raw_ok"] = e.raw_ok;
    row["ok"] = e.ok;
    entries.push_back(std::move(row));
  }
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

}  // namespace epsent
