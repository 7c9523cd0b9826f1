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

// Small runs of every property check. The full-size runs live in the
// acceptance binary.

#include <gtest/gtest.h>

#include "epsent/states.hpp"
#include "epsent/theorems.hpp"

namespace epsent {
namespace {

double detail(const PropertyReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details)
    if (k == key) return v;
  ADD_FAILURE() << "missing detail " << key;
  return 0.0;
}

void expect_clean(const PropertyReport& r, int trials) {
  EXPECT_EQ(r.n_trials, trials) << r.property_id;
  EXPECT_EQ(r.n_failures, 0) << report_to_json(r);
  EXPECT_TRUE(r.failure_seeds.empty());
  EXPECT_LE(r.worst_violation, 0.0);
}

TEST(Suite, StructuralChecksPass) {
  expect_clean(check_vos(10, 0.05), 10);
  expect_clean(check_wem(8, 0.05), 8);
  expect_clean(check_lu(6, 0.05), 6);
  expect_clean(check_convexity(6, 0.05), 6);
  expect_clean(check_te(4, 0.05), 4);
}

TEST(Suite, RelentBallChecksPass) {
  SuiteConfig cfg;
  cfg.distance = Distance::RelEnt;
  expect_clean(check_vos(5, 0.05, cfg), 5);
  expect_clean(check_wem(4, 0.05, cfg), 4);
  expect_clean(check_relent_variant(3, 0.05), 3);
}

TEST(Suite, MoaViolationIsExhibited) {
  const auto r = check_moa(0.1);
  expect_clean(r, 1);
  EXPECT_NEAR(detail(r, "eta"), 2.0 / 15.0, 1e-12);
  EXPECT_LE(detail(r, "eps_measure_rho"), 1e-4);
  EXPECT_GT(detail(r, "branch_average"), 0.01);
  EXPECT_NEAR(detail(r, "branch_average"), detail(r, "eta_times_eps_measure_ent"), 1e-4);
  EXPECT_LE(detail(r, "moa_violation"), detail(r, "violation_bound") + 1e-4);
}

TEST(Suite, ContinuityInEpsilon) {
  const auto phi = states::bell();
  std::vector<double> grid{0.0, 0.02, 0.05, 0.1, 0.2, 0.3};
  const auto r = check_continuity_eps(phi, grid);
  EXPECT_TRUE(r.passed()) << report_to_json(r);
  EXPECT_EQ(r.entries.size(), 15u);
  // eps1 = 0 saturates: observed = E - E_eps2 = bound.
  for (const auto& e : r.entries)
    if (e.a == 0.0) EXPECT_NEAR(e.observed, e.bound, 2e-6);
  const auto rho = suite_state(3, true);
  EXPECT_TRUE(check_continuity_eps(rho, {0.01, 0.03, 0.06, 0.1}).passed());
}

TEST(Suite, ContinuityInState) {
  const auto rho = suite_state(5, true);
  const auto still = check_continuity_rho(rho, 3, 0.0, 0.05);
  for (const auto& e : still.entries) EXPECT_NEAR(e.observed, 0.0, 1e-12);
  EXPECT_TRUE(still.passed());
  for (double eta : {0.01, 0.1}) {
    const auto r = check_continuity_rho(rho, 5, eta, 0.05);
    EXPECT_TRUE(r.passed()) << report_to_json(r);
    EXPECT_EQ(r.entries.size(), 5u);
  }
}

TEST(Suite, LemmaBoundsAndMonogamy) {
  expect_clean(check_lemma_mixing(3), 15);
  expect_clean(check_bounds(3, {0.0, 0.5}), 6);
  const auto m = check_monogamy(5, 0.05);
  expect_clean(m, 5);
  EXPECT_NEAR(detail(m, "w_tangle_ac"), 4.0 / 9.0, 1e-6);
  EXPECT_NEAR(detail(m, "w_tangle_bc"), 4.0 / 9.0, 1e-6);
  EXPECT_NEAR(detail(m, "w_tangle_ab_c"), 8.0 / 9.0, 1e-6);
  expect_clean(check_monogamy(3, 0.0), 3);
}

TEST(Suite, ReportsAreDeterministic) {
  SuiteConfig cfg;
  cfg.seed = 17;
  EXPECT_EQ(report_to_json(check_wem(4, 0.05, cfg)), report_to_json(check_wem(4, 0.05, cfg)));
  const auto rho = suite_state(17, true);
  EXPECT_EQ(report_to_json(check_continuity_rho(rho, 3, 0.05, 0.05, cfg)),
            report_to_json(check_continuity_rho(rho, 3, 0.05, 0.05, cfg)));
}

TEST(Suite, SuiteStatesAreEntangledWhenAsked) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_GT(evaluate({Measure::Negativity, bipartition()}, suite_state(seed, true)), 1e-3);
    EXPECT_GT(min_eigenvalue(suite_state(seed, true, true).matrix()), 0.0);
  }
}

}  // namespace
}  // namespace epsent
