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

// Seeded property checks of the structural results on epsilon-measures.
//
// Solver values are upper approximations of minima. An inequality whose
// "larger side" comes from a solve is first checked as is (a raw
// violation) and, if it fails, the offending solve is repeated with ten
// times the restarts and oracle samples before the trial counts as a
// confirmed failure.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epsent/measures.hpp"
#include "epsent/solver.hpp"

namespace epsent {

struct SuiteConfig {
  std::uint64_t seed = 1;
  /// Accuracy assumed for a single solve; inequalities between two solves
  /// use twice this.
  double solver_tol = 1e-6;
  SolverCfg solver;
  /// Oracle samples used by the refinement solve (already multiplied).
  int refine_oracle_samples = 20000;
  int refine_factor = 10;
  Distance distance = Distance::Trace;
  Measure measure = Measure::Negativity;
};

struct PropertyReport {
  std::string property_id;
  int n_trials = 0;
  int raw_violations = 0;
  /// Violations that survived refinement.
  int n_failures = 0;
  /// Largest lhs - rhs - tolerance over all assertions; positive is a violation.
  double worst_violation = 0.0;
  std::vector<std::uint64_t> failure_seeds;
  double tolerance = 0.0;
  /// Check-specific numbers, in a fixed order.
  std::vector<std::pair<std::string, double>> details;

  bool passed() const { return n_failures == 0; }
};

struct ContinuityEntry {
  /// (eps1, eps2) for the epsilon check; (eta, eps) for the state check.
  double a = 0.0;
  double b = 0.0;
  double observed = 0.0;
  double bound = 0.0;
  /// Constant M of the state check (0 for the epsilon check).
  double m = 0.0;
  bool raw_ok = true;
  bool ok = true;
};

struct ContinuityReport {
  std::string property_id;
  std::vector<ContinuityEntry> entries;
  /// Largest M seen.
  double m_max = 0.0;
  int raw_violations = 0;
  int n_failures = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return n_failures == 0; }
  PropertyReport summary() const;
};

/// eps-measure of separable states vanishes (mixtures of up to 16 products).
PropertyReport check_vos(int n, double epsilon, const SuiteConfig& cfg = {});
/// E_eps(Lambda rho) <= E_eps(rho) for random LOCC channels.
PropertyReport check_wem(int n, double epsilon, const SuiteConfig& cfg = {});
/// Invariance under random local unitaries.
PropertyReport check_lu(int n, double epsilon, const SuiteConfig& cfg = {});
/// The ancilla counterexample to monotonicity on average.
PropertyReport check_moa(double epsilon, const SuiteConfig& cfg = {});
/// E_eps(p rho1 + (1 - p) rho2) <= p E_eps(rho1) + (1 - p) E_eps(rho2).
PropertyReport check_convexity(int n, double epsilon, const SuiteConfig& cfg = {});
/// E_eps(rho (x) tau) = E_eps(rho) with the partition left on the first two parties.
PropertyReport check_te(int n, double epsilon, const SuiteConfig& cfg = {});
/// 0 <= E_eps1 - E_eps2 <= ((eps2 - eps1) / eps2)(E - E_eps2) for eps1 < eps2.
ContinuityReport check_continuity_eps(const DensityMatrix& rho, const std::vector<double>& eps_grid,
                                      const SuiteConfig& cfg = {});
/// |E_eps(rho2) - E_eps(rho1)| <= eta / (eps + eta) M for rho2 at trace
/// distance eta from rho1, M = max{E(rho2) - E_eps(rho1), E(rho1) - E_eps(rho2)}.
ContinuityReport check_continuity_rho(const DensityMatrix& rho1, int n_perturbations, double eta, double epsilon,
                                      const SuiteConfig& cfg = {});
/// E_D((1 - p) rho + p sigma*) = (1 - p) E_D(rho) over p in {0, 1/4, 1/2, 3/4, 1}.
PropertyReport check_lemma_mixing(int n, const SuiteConfig& cfg = {});
/// Upper and lower two-sided bounds and the closed form for E = E_D.
/// Each state is tested at eps = f E_D(rho) for every f in `fractions`.
PropertyReport check_bounds(int n, const std::vector<double>& fractions, const SuiteConfig& cfg = {});
/// E_eps^{A|C} + E_eps^{B|C} <= tangle^{(AB)|C} on pure three-qubit states.
PropertyReport check_monogamy(int n, double epsilon, const SuiteConfig& cfg = {});
/// (E_R)_eps <= E_R - eps for relative-entropy balls on full-rank states.
PropertyReport check_relent_variant(int n, double epsilon, const SuiteConfig& cfg = {});

std::string report_to_json(const PropertyReport& report);
std::string report_to_json(const ContinuityReport& report);

/// Random two-qubit state of random rank; `entangled` rejects NPT-free draws.
DensityMatrix suite_state(std::uint64_t seed, bool entangled, bool full_rank = false);

}  // namespace epsent
