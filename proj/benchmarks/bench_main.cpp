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

// Costs of the kernels the solvers spend their time in, on two-qubit and
// three-qubit inputs.

#include <benchmark/benchmark.h>

#include "epsent/linalg.hpp"
#include "epsent/measures.hpp"
#include "epsent/random.hpp"
#include "epsent/solver.hpp"

namespace {

using namespace epsent;

void BM_HermitianEigen(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(1);
  const Matrix m = random_density_matrix(dim, dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(8)->Arg(16);

void BM_Negativity(benchmark::State& state) {
  const auto rho = random_density({2, 2}, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho.matrix(), rho.dims(), bipartition()));
}
BENCHMARK(BM_Negativity);

void BM_TraceDistanceToSep(benchmark::State& state) {
  const auto rho = random_density({2, 2}, 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_sep(rho, Distance::Trace, bipartition()));
}
BENCHMARK(BM_TraceDistanceToSep)->Unit(benchmark::kMillisecond);

void BM_RelEntToSep(benchmark::State& state) {
  const auto rho = random_density({2, 2}, 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_sep(rho, Distance::RelEnt, bipartition()));
}
BENCHMARK(BM_RelEntToSep)->Unit(benchmark::kMillisecond);

void BM_EpsMeasureNegativity(benchmark::State& state) {
  const auto rho = random_density({2, 2}, 2, 11);
  const MeasureKind kind{Measure::Negativity, bipartition()};
  for (auto _ : state) benchmark::DoNotOptimize(eps_measure(rho, kind, BallSpec{Distance::Trace, 0.05, rho}));
}
BENCHMARK(BM_EpsMeasureNegativity)->Unit(benchmark::kMillisecond);

void BM_EpsMeasureThreeQubit(benchmark::State& state) {
  const auto rho = random_density({2, 2, 2}, 2, 13);
  const MeasureKind kind{Measure::Negativity, Partition::parse("0|1,2")};
  for (auto _ : state) benchmark::DoNotOptimize(eps_measure(rho, kind, BallSpec{Distance::Trace, 0.05, rho}));
}
BENCHMARK(BM_EpsMeasureThreeQubit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
