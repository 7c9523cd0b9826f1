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

// Ball minimization. Lower references come from linear witnesses: for any
// 0 <= Z <= I, N(sigma) >= tr(A sigma) with A = -Z^Gamma, and over a trace
// ball of radius eps tr(A sigma) >= tr(A rho) - eps (lambda_max(A) -
// lambda_min(A)). Upper references are explicit feasible states.

#include <cmath>

#include <gtest/gtest.h>

#include "epsent/error.hpp"
#include "epsent/random.hpp"
#include "epsent/solver.hpp"
#include "epsent/states.hpp"

namespace epsent {
namespace {

const MeasureKind kNeg{Measure::Negativity, bipartition()};
const MeasureKind kDtr{Measure::TraceDistToSep, bipartition()};

double witness_lower_bound(const DensityMatrix& rho, double eps) {
  const Dims dims{2, 2};
  const std::vector<int> second{1};
  const auto es = hermitian_eigen(partial_transpose(rho.matrix(), dims, second));
  const Matrix z = spectral_apply(es, [](double v) { return v < 0.0 ? 1.0 : 0.0; });
  const Matrix a = -partial_transpose(z, dims, second);
  const auto ea = hermitian_eigen(a);
  const double spread = ea.values(0) - ea.values(ea.values.size() - 1);
  return a.cwiseProduct(rho.matrix().conjugate()).sum().real() - eps * spread;
}

SolveResult solve(const DensityMatrix& rho, const MeasureKind& kind, double eps, SolverCfg cfg = {}) {
  return eps_measure(rho, kind, BallSpec{Distance::Trace, eps, rho}, cfg);
}

TEST(EpsMeasure, BellNegativityLine) {
  const auto phi = states::bell();
  for (double eps : {0.0, 0.05, 0.1, 0.25, 0.4}) {
    const auto r = solve(phi, kNeg, eps);
    // The witness bound is tight here: spread 1, N(Phi+) = 1/2.
    EXPECT_NEAR(witness_lower_bound(phi, eps), 0.5 - eps, 1e-12);
    EXPECT_NEAR(r.value, 0.5 - eps, 1e-6) << eps;
    EXPECT_TRUE(contains(BallSpec{Distance::Trace, eps, phi}, r.witness));
  }
  EXPECT_NEAR(solve(phi, kNeg, 0.5).value, 0.0, 1e-9);
  EXPECT_NEAR(solve(phi, kNeg, 0.9).value, 0.0, 1e-12);
}

TEST(EpsMeasure, RandomStatesBracketedByWitnessAndOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rho = random_density({2, 2}, 1 + static_cast<int>(seed % 4), seed);
    const double eps = 0.05;
    SolverCfg cfg;
    cfg.seed = seed;
    const auto r = solve(rho, kNeg, eps, cfg);
    EXPECT_GE(r.value, witness_lower_bound(rho, eps) - 1e-9) << seed;
    EXPECT_LE(r.value, evaluate(kNeg, rho) + 1e-12);
    EXPECT_NEAR(evaluate(kNeg, r.witness), r.value, 1e-12);
    EXPECT_TRUE(contains(BallSpec{Distance::Trace, eps, rho}, r.witness));
    const double oracle = sampling_oracle(rho, kNeg, BallSpec{Distance::Trace, eps, rho}, 2000, seed);
    EXPECT_LE(r.value, oracle + 5e-3) << seed;
  }
}

TEST(EpsMeasure, OracleSamplesOnlyLowerTheValue) {
  const auto rho = random_density({2, 2}, 2, 4);
  SolverCfg cfg;
  cfg.oracle_samples = 3000;
  const auto r = solve(rho, kNeg, 0.05, cfg);
  ASSERT_TRUE(r.oracle_value.has_value());
  EXPECT_LE(r.value, *r.oracle_value + 1e-12);
}

TEST(EpsMeasure, TraceDistanceClosedForm) {
  for (double f : {0.7, 0.9}) {
    const auto rho = states::isotropic(f);
    for (double eps : {0.0, 0.05, 0.1, 0.15}) {
      EXPECT_NEAR(solve(rho, kDtr, eps).value, std::max(0.0, f - 0.5 - eps), 1e-6) << f << " " << eps;
    }
  }
}

TEST(EpsMeasure, EndpointsAndBounds) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rho = random_density({2, 2}, 2, seed);
    EXPECT_NEAR(solve(rho, kNeg, 0.0).value, evaluate(kNeg, rho), 1e-12);
    const auto bound = thm4_upper_bound(rho, kNeg, 0.03);
    const auto r = solve(rho, kNeg, 0.03);
    ASSERT_TRUE(r.upper_bound_thm4.has_value());
    EXPECT_NEAR(*r.upper_bound_thm4, bound.value, 1e-9);
    EXPECT_LE(r.value, bound.value + 1e-6);
    EXPECT_TRUE(r.within_upper_bound);
    if (bound.distance_to_sep > 0.0) {
      EXPECT_NEAR(solve(rho, kNeg, bound.distance_to_sep + 1e-3).value, 0.0, 1e-9);
    }
  }
}

TEST(EpsMeasure, Deterministic) {
  const auto rho = random_density({2, 2}, 3, 17);
  SolverCfg cfg;
  cfg.seed = 99;
  const auto a = solve(rho, kNeg, 0.05, cfg);
  const auto b = solve(rho, kNeg, 0.05, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ((a.witness.matrix() - b.witness.matrix()).norm(), 0.0);
}

TEST(EpsMeasure, SeparableCentersGiveZero) {
  Rng rng(5);
  for (const auto& kind : {kNeg, MeasureKind{Measure::Concurrence2Q, bipartition()}, kDtr}) {
    const DensityMatrix sigma({2, 2}, random_separable_matrix({2, 2}, 8, rng));
    EXPECT_LE(solve(sigma, kind, 0.05).value, 1e-6);
  }
}

TEST(EpsMeasure, ConcurrenceAndTangle) {
  const auto phi = states::bell();
  for (Measure m : {Measure::Concurrence2Q, Measure::Tangle2Q}) {
    const MeasureKind kind{m, bipartition()};
    const auto r = solve(phi, kind, 0.1);
    EXPECT_LT(r.value, 1.0);
    EXPECT_GT(r.value, 0.0);
    EXPECT_NEAR(evaluate(kind, r.witness), r.value, 1e-9);
  }
  // C(sigma) >= 2 N(sigma) on two qubits, so the concurrence line sits
  // above twice the negativity line: C_eps(Phi+) >= 1 - 2 eps.
  EXPECT_GE(solve(phi, {Measure::Concurrence2Q, bipartition()}, 0.1).value, 0.8 - 1e-6);
}

TEST(EpsMeasure, AttachedPartyDoesNotChangeValue) {
  const auto rho = random_density({2, 2}, 2, 21);
  const auto tau = random_density({2}, 2, 22);
  const auto big = tensor(rho, tau);
  const double small_value = solve(rho, kNeg, 0.05).value;
  const double big_value = solve(big, kNeg, 0.05).value;
  EXPECT_NEAR(small_value, big_value, 2e-6);
}

// A pure attached party leaves a kernel where roundoff must not block the lift.
TEST(EpsMeasure, AttachedPureParty) {
  for (std::uint64_t seed : {31, 32, 33}) {
    const auto rho = random_density({2, 2}, 3, seed);
    const auto big = tensor(rho, random_density({2}, 1, seed + 100));
    const auto r = solve(big, kNeg, 0.05);
    EXPECT_NEAR(solve(rho, kNeg, 0.05).value, r.value, 2e-6) << seed;
    EXPECT_TRUE(r.converged) << seed;
  }
}

TEST(EpsMeasure, RejectsBadInput) {
  const auto rho = states::bell();
  EXPECT_THROW(solve(rho, kNeg, -0.1), Error);
  SolverCfg bad;
  bad.max_iters = 0;
  EXPECT_THROW(solve(rho, kNeg, 0.1, bad), Error);
  EXPECT_THROW(eps_measure(rho, kNeg, BallSpec{Distance::Trace, 0.1, states::maximally_mixed({2, 2})}), Error);
}

TEST(Preprocess, FixesCenterAndContracts) {
  const auto psi = states::from_ket({2, 2}, (Eigen::VectorXcd(4) << 0.8, 0.0, 0.0, 0.6).finished());
  EXPECT_LT((preprocess_local_support(psi, psi).state.matrix() - psi.matrix()).norm(), 1e-12);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sigma = random_density({2, 2}, 4, seed);
    const auto p = preprocess_local_support(psi, sigma);
    EXPECT_LE(trace_distance(p.state, psi), trace_distance(sigma, psi) + 1e-12);
  }
  // Full-rank center: nothing to do.
  const auto full = random_density({2, 2}, 4, 3);
  EXPECT_FALSE(preprocess_local_support(full, states::bell()).nontrivial);
}

TEST(LowerBoundCheck, ConsistentOnRandomStates) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rho = random_density({2, 2}, 2, seed);
    const double ed = thm4_upper_bound(rho, kNeg, 0.0).distance_to_sep;
    if (ed <= 0.0) continue;
    const auto report = thm4_lower_bound_check(rho, kNeg, 0.5 * ed, 4);
    EXPECT_TRUE(report.consistent) << seed;
    EXPECT_GT(report.probes_used, 0);
    EXPECT_NEAR(report.level, 0.5 * ed, 1e-9);
  }
}

TEST(Oracle, DeterministicPrefixAndFeasible) {
  const auto rho = random_density({2, 2}, 2, 31);
  const BallSpec ball{Distance::Trace, 0.05, rho};
  const auto a = sampling_oracle_search(rho, kNeg, ball, 1000, 7);
  const auto b = sampling_oracle_search(rho, kNeg, ball, 1000, 7);
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(contains(ball, a.best));
  EXPECT_NEAR(evaluate(kNeg, a.best), a.value, 1e-12);
  EXPECT_LE(sampling_oracle(rho, kNeg, ball, 4000, 7), a.value);
}

TEST(RelentBall, Examples) {
  const auto rho = random_density({2, 2}, 4, 41);
  EXPECT_NEAR(relent_eps_measure(rho, kNeg, 0.0).value, evaluate(kNeg, rho), 1e-12);
  Rng rng(42);
  const DensityMatrix sep({2, 2}, random_separable_matrix({2, 2}, 4, rng));
  EXPECT_LE(relent_eps_measure(sep, kNeg, 0.1).value, 1e-9);
  const auto r = relent_eps_measure(rho, kNeg, 0.05);
  EXPECT_LE(relative_entropy(r.witness, rho), 0.05 + 1e-9);
  EXPECT_LE(r.value, evaluate(kNeg, rho));
  EXPECT_NEAR(evaluate(kNeg, r.witness), r.value, 1e-12);
  // The eps-measure over the relent ball agrees with the dispatching entry.
  EXPECT_EQ(eps_measure(rho, kNeg, BallSpec{Distance::RelEnt, 0.05, rho}).value, r.value);
}

TEST(RelentBall, PureCenterBallIsAPoint) {
  const auto phi = states::bell();
  EXPECT_NEAR(relent_eps_measure(phi, kNeg, 0.2).value, 0.5, 1e-12);
}

}  // namespace
}  // namespace epsent
