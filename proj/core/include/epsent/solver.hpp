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

// The epsilon-measure E_eps(rho) = min { E(sigma) : sigma in B_eps(rho) }.

#pragma once

#include <cstdint>
#include <optional>

#include "epsent/ball.hpp"
#include "epsent/measures.hpp"

namespace epsent {

/// Subgradient step s_k = s0 / k^power; s0 = 0 selects s0 = epsilon.
struct StepSchedule {
  double s0 = 0.0;
  double power = 0.5;
};

struct SolverCfg {
  /// Projected-subgradient iterations per start.
  int max_iters = 60;
  StepSchedule step;
  /// Random feasible starts on top of rho and the four mixing starts.
  int restarts = 2;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  /// ADMM refinement iterations for the negativity measures (0 disables).
  int polish_iters = 3000;
  /// When positive, the sampling oracle is run with this many samples and
  /// its best sample competes for the reported minimum.
  int oracle_samples = 0;
  /// Map every candidate through the local-support LOCC map first.
  bool preprocess = false;

  /// Throws epsent::Error unless max_iters >= 1 and tol > 0.
  void validate() const;
};

struct SolveResult {
  double value = 0.0;
  DensityMatrix witness;
  std::optional<double> oracle_value;
  std::optional<double> upper_bound_thm4;
  bool converged = false;
  bool preprocessing_applied = false;
  /// value <= upper_bound_thm4 + tol (true when no bound is reported).
  bool within_upper_bound = true;
};

/// Minimizes E over the ball around rho. Trace balls: projected subgradient
/// from rho, the mixing candidates toward the closest PPT state and random
/// feasible starts, followed by an ADMM refinement for the negativity
/// measures. Relative-entropy balls delegate to relent_eps_measure.
SolveResult eps_measure(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball,
                        const SolverCfg& cfg = {});

struct SupportPreprocess {
  DensityMatrix state;
  /// Weight tr(P sigma P) of the projected branch.
  double weight = 1.0;
  /// True when the projected branch had weight below 1e-12 and the output
  /// is the separable filler alone.
  bool degenerate = false;
  /// False when every local support is the whole local space.
  bool nontrivial = false;
};

/// The LOCC map sigma -> P sigma P + (1 - tr P sigma P) sigma_sep where P is
/// the product of the projectors onto the supports of rho's one-party
/// marginals and sigma_sep the product of the normalized projectors. It
/// fixes rho and never increases the trace distance to rho.
SupportPreprocess preprocess_local_support(const DensityMatrix& rho, const DensityMatrix& sigma);

struct Thm4Bound {
  double value = 0.0;
  /// E_D of rho for the trace distance across the measure's partition.
  double distance_to_sep = 0.0;
  double base_value = 0.0;
  bool converged = false;
};

/// (1 - eps / E_D(rho)) E(rho), clamped to [0, E(rho)].
Thm4Bound thm4_upper_bound(const DensityMatrix& rho, const MeasureKind& measure, double epsilon);

struct LowerBoundReport {
  int probes_requested = 0;
  int probes_used = 0;
  int probes_skipped = 0;
  /// E_D(rho) - eps: the level every probe sits on.
  double level = 0.0;
  double min_probe_value = 0.0;
  double solver_value = 0.0;
  double tol = 0.0;
  bool consistent = false;
};

/// Probes states tau on the level set E_D(tau) = E_D(rho) - eps by mixing
/// states toward their closest PPT states, and checks that the smallest E
/// among them does not exceed the solver value. The probes are the mixed
/// rho itself, the mixed solver witness and n_probe random states.
LowerBoundReport thm4_lower_bound_check(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                                        int n_probe, const SolverCfg& cfg = {});
/// Same, reusing an existing solve for the same (rho, measure, epsilon).
LowerBoundReport thm4_lower_bound_check(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                                        int n_probe, const SolveResult& solved, const SolverCfg& cfg = {});

struct OracleResult {
  double value = 0.0;
  DensityMatrix best;
  int samples = 0;
};

/// Brute-force upper bound on E_eps(rho): the minimum of E over n_samples
/// feasible states. Deterministic in (seed, n_samples), and the samples for
/// n are a prefix of the samples for any larger n.
OracleResult sampling_oracle_search(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball,
                                    int n_samples, std::uint64_t seed);
double sampling_oracle(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball, int n_samples,
                       std::uint64_t seed);

/// E_eps for the ball { sigma : S(sigma || rho) <= eps }.
SolveResult relent_eps_measure(const DensityMatrix& rho, const MeasureKind& measure, double epsilon,
                               const SolverCfg& cfg = {});

}  // namespace epsent
