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

// Brute-force sampling of the ball. Samples are drawn in fixed-size shards,
// each with its own derived seed, so shards run independently and the
// samples for n are a prefix of the samples for any larger n.

#include <algorithm>
#include <cmath>

#include "epsent/error.hpp"
#include "epsent/parallel.hpp"
#include "epsent/solver.hpp"
#include "solver_detail.hpp"

namespace epsent {
namespace {

constexpr int kShard = 1 << 14;
constexpr int kWarmup = 512;
constexpr int kAdaptWindow = 20;

// Running search inside one shard. Three families:
//   (i)   random states tau, mixed with rho up to the ball boundary; after a
//         warm-up, tau is mostly a random perturbation of the best sample so
//         far (step adapted by the one-fifth success rule);
//   (ii)  project_feasible of random perturbations of rho;
//   (iii) mixtures of rho with random separable states, pushed to the boundary.
detail::Best run_shard(const DensityMatrix& rho, MeasureEvaluator& eval, const BallSpec& ball, int count,
                       std::uint64_t seed) {
  Rng rng(seed);
  const int dim = rho.dim();
  const Matrix& center = rho.matrix();
  detail::Best best;
  double step = std::max(ball.epsilon, 1e-3);
  int trials = 0;
  int successes = 0;

  const auto toward = [&](const Matrix& tau) {
    const double d = trace_distance(center, tau);
    const double lambda = d > ball.epsilon ? ball.epsilon / d : 1.0;
    return Matrix(center + lambda * (tau - center));
  };

  for (int k = 0; k < count; ++k) {
    Matrix sample;
    bool local = false;
    if (k % 50 == 49) {
      const Matrix kick = (ball.epsilon * 2.0 * rng.uniform()) * detail::random_direction(dim, rng);
      sample = project_feasible(ball, center + kick, 200, 1e-10).state.matrix();
    } else if (k % 10 == 4) {
      sample = toward(random_separable_matrix(rho.dims(), 1 + rng.index(8), rng));
    } else if (k >= kWarmup && best.value > 0.0 && rng.uniform() < 0.75) {
      local = true;
      const Matrix kick = (step * std::abs(rng.normal())) * detail::random_direction(dim, rng);
      sample = toward(project_to_density(best.state + kick));
    } else {
      sample = toward(detail::random_state(dim, rng));
    }
    const double value = eval.value(sample);
    const bool improved = best.offer(value, sample);
    if (local) {
      ++trials;
      if (improved) ++successes;
      if (trials == kAdaptWindow) {
        step *= 5 * successes > trials ? 1.5 : 1.0 / 1.5;
        step = std::clamp(step, 1e-9, 2.0);
        trials = successes = 0;
      }
    }
    if (best.value <= 0.0) break;
  }
  return best;
}

}  // namespace

OracleResult sampling_oracle_search(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball,
                                    int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error("sampling_oracle: n_samples must be at least 1");
  if (ball.distance != Distance::Trace) throw Error("sampling_oracle: trace-distance balls only");
  ball.validate();
  measure.validate(rho.dims());
  OracleResult out;
  out.samples = n_samples;
  MeasureEvaluator base(measure, rho.dims());
  const double e_rho = base.value(rho.matrix());
  if (ball.epsilon == 0.0 || e_rho <= 0.0) {
    out.value = e_rho;
    out.best = rho;
    return out;
  }
  const std::size_t shards = static_cast<std::size_t>((n_samples + kShard - 1) / kShard);
  const auto results = parallel_map(shards, [&](std::size_t s) {
    MeasureEvaluator eval(measure, rho.dims());
    const int count = std::min(kShard, n_samples - static_cast<int>(s) * kShard);
    return run_shard(rho, eval, ball, count, derive_seed(seed, 0x0ac1e000 + s));
  });
  detail::Best best;
  best.offer(e_rho, rho.matrix());
  for (const auto& r : results) best.offer(r.value, r.state);
  out.value = best.value;
  out.best = DensityMatrix::trusted(rho.dims(), hermitian_part(best.state));
  return out;
}

double sampling_oracle(const DensityMatrix& rho, const MeasureKind& measure, const BallSpec& ball, int n_samples,
                       std::uint64_t seed) {
  return sampling_oracle_search(rho, measure, ball, n_samples, seed).value;
}

}  // namespace epsent
