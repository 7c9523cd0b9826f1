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

#include <gtest/gtest.h>

#include "epsent/ball.hpp"
#include "epsent/error.hpp"
#include "epsent/random.hpp"
#include "epsent/states.hpp"

namespace epsent {
namespace {

BallSpec trace_ball(const DensityMatrix& center, double eps) { return {Distance::Trace, eps, center}; }

TEST(Ball, ContainsExamples) {
  const auto phi = states::bell();
  const auto mixed = states::maximally_mixed({2, 2});
  EXPECT_TRUE(contains(trace_ball(phi, 0.0), phi));
  EXPECT_TRUE(contains(BallSpec{Distance::RelEnt, 0.0, phi}, phi));
  EXPECT_FALSE(contains(trace_ball(phi, 0.1), mixed));
  EXPECT_TRUE(contains(trace_ball(phi, 0.75), mixed));
  const auto full = random_density({2, 2}, 4, 3);
  EXPECT_FALSE(contains(BallSpec{Distance::RelEnt, 5.0, phi}, full));  // support escapes
  EXPECT_THROW(contains(trace_ball(phi, 0.1), states::basis({2}, 0)), Error);
  EXPECT_THROW((BallSpec{Distance::Trace, -0.1, phi}.validate()), Error);
}

TEST(Ball, ProjectBallExamples) {
  const auto center = random_density({2, 2}, 3, 5);
  const auto ball = trace_ball(center, 0.1);
  EXPECT_LT((project_ball(ball, center.matrix()) - center.matrix()).norm(), 1e-12);

  // sigma at trace distance 2 eps lands on the sphere.
  const auto far = random_density({2, 2}, 2, 6);
  const double d = trace_distance(center, far);
  const Matrix sigma = center.matrix() + (0.2 / d) * (far.matrix() - center.matrix());
  const Matrix p = project_ball(ball, sigma);
  EXPECT_NEAR(0.5 * trace_norm(p - center.matrix()), 0.1, 1e-8);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
  EXPECT_LT((project_ball(ball, p) - p).norm(), 1e-10);
}

TEST(Ball, ProjectBallIsNearestPoint) {
  Rng rng(7);
  const auto center = random_density({2, 2}, 4, 8);
  const auto ball = trace_ball(center, 0.15);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix g = ginibre(4, 4, rng);
    Matrix h = 0.5 * (g + g.adjoint());
    h += ((1.0 - h.trace().real()) / 4.0) * Matrix::Identity(4, 4);
    const Matrix p = project_ball(ball, h);
    // <h - p, y - p> <= 0 for feasible y (trace one, within the radius).
    for (int k = 0; k < 30; ++k) {
      const Matrix gy = ginibre(4, 4, rng);
      Matrix dir = 0.5 * (gy + gy.adjoint());
      dir -= (dir.trace() / 4.0) * Matrix::Identity(4, 4);
      const Matrix y = center.matrix() + (rng.uniform() * 0.3 / trace_norm(dir)) * dir;
      EXPECT_LE((h - p).cwiseProduct((y - p).conjugate()).sum().real(), 1e-9);
    }
  }
}

TEST(Ball, ProjectFeasibleExamples) {
  const auto phi = states::bell();
  const auto mixed = states::maximally_mixed({2, 2});
  const auto ball = trace_ball(phi, 0.05);

  const Matrix inside = 0.97 * phi.matrix() + 0.03 * mixed.matrix();
  EXPECT_LT((project_feasible(ball, inside).state.matrix() - inside).norm(), 1e-9);

  const auto fp = project_feasible(ball, mixed.matrix());
  EXPECT_LE(trace_distance(phi, fp.state), 0.05 + 1e-8);
  EXPECT_GE(min_eigenvalue(fp.state.matrix()), -1e-9);
  EXPECT_NEAR(fp.state.matrix().trace().real(), 1.0, 1e-10);

  // Inactive ball: plain projection onto the density matrices.
  Rng rng(9);
  const Matrix g = ginibre(4, 4, rng);
  const Matrix h = phi.matrix() + 0.05 * (g + g.adjoint());
  const auto wide = project_feasible(trace_ball(phi, 1.0), h);
  EXPECT_LT((wide.state.matrix() - project_to_density(h)).norm(), 1e-8);
}

TEST(Ball, ProjectFeasibleAlwaysFeasible) {
  Rng rng(10);
  for (int rep = 0; rep < 20; ++rep) {
    const auto center = random_density({2, 2}, 1 + rep % 4, 100 + rep);
    const auto ball = trace_ball(center, 0.02 + 0.1 * rng.uniform());
    const Matrix g = ginibre(4, 4, rng);
    const auto fp = project_feasible(ball, 0.5 * (g + g.adjoint()));
    EXPECT_TRUE(contains(ball, fp.state));
  }
}

TEST(Ball, ShrinkIntoRelentBall) {
  const auto center = random_density({2, 2}, 4, 12);
  const BallSpec ball{Distance::RelEnt, 0.05, center};
  const auto far = random_density({2, 2}, 4, 13);
  const Matrix s = shrink_into_ball(ball, far.matrix());
  EXPECT_LE(relative_entropy(s, center.matrix()), 0.05 + 1e-9);
  EXPECT_GT(relative_entropy(s, center.matrix()), 0.05 - 1e-6);
  EXPECT_THROW(project_ball(ball, far.matrix()), Error);
}

}  // namespace
}  // namespace epsent
