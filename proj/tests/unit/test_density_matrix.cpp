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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "epsent/density_matrix.hpp"
#include "epsent/error.hpp"
#include "epsent/random.hpp"
#include "epsent/state_io.hpp"
#include "epsent/states.hpp"

namespace epsent {
namespace {

Matrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

std::string violated(const Dims& dims, const Matrix& m) {
  try {
    DensityMatrix rho(dims, m);
  } catch (const InvariantError& e) {
    return e.invariant();
  }
  return "";
}

TEST(DensityMatrix, NamesViolatedInvariant) {
  Matrix m = diag({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_EQ(violated({2}, m), "hermitian");
  EXPECT_EQ(violated({2}, diag({0.5, 0.6})), "unit-trace");
  EXPECT_EQ(violated({2}, diag({1.1, -0.1})), "psd");
  EXPECT_EQ(violated({2, 2}, diag({0.5, 0.5})), "shape");
  EXPECT_EQ(violated({2}, diag({0.5, 0.5})), "");
}

TEST(DensityMatrix, EigenExamples) {
  const auto es = hermitian_eigen(diag({3, 1, 2}));
  EXPECT_NEAR(es.values(0), 3.0, 1e-14);
  EXPECT_NEAR(es.values(1), 2.0, 1e-14);
  EXPECT_NEAR(es.values(2), 1.0, 1e-14);

  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto ex = hermitian_eigen(x);
  EXPECT_NEAR(ex.values(0), 1.0, 1e-14);
  EXPECT_NEAR(ex.values(1), -1.0, 1e-14);
  // |+> up to phase
  EXPECT_NEAR(std::abs(ex.vectors(0, 0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(ex.vectors(0, 0) - ex.vectors(1, 0)), 0.0, 1e-12);

  Rng rng(42);
  const Matrix g = ginibre(8, 8, rng);
  const Matrix h = 0.5 * (g + g.adjoint());
  const auto eh = hermitian_eigen(h);
  EXPECT_LT((eh.vectors * eh.values.cast<Complex>().asDiagonal() * eh.vectors.adjoint() - h).norm(), 1e-10);
}

TEST(Distances, TraceDistanceExamples) {
  const auto zero = states::basis({2}, 0);
  const auto one = states::basis({2}, 1);
  const auto phi = states::bell();
  const auto mixed = states::maximally_mixed({2, 2});
  EXPECT_NEAR(trace_distance(phi, phi), 0.0, 1e-14);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(phi, mixed), 0.75, 1e-12);
  EXPECT_THROW(trace_distance(phi, zero), Error);
}

TEST(Distances, RelativeEntropyExamples) {
  const auto zero = states::basis({2}, 0);
  const auto one = states::basis({2}, 1);
  const DensityMatrix half({2}, diag({0.5, 0.5}));
  const DensityMatrix skew({2}, diag({0.75, 0.25}));
  EXPECT_NEAR(relative_entropy(half, half), 0.0, 1e-12);
  EXPECT_EQ(relative_entropy(zero, one), std::numeric_limits<double>::infinity());
  const double expected = 0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25);
  EXPECT_NEAR(relative_entropy(half, skew), expected, 1e-12);
  EXPECT_NEAR(expected, 0.2075, 5e-5);
}

TEST(Distances, RelativeEntropyNonnegativeAndContractive) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = random_density({2, 2}, 4, seed);
    const auto sigma = random_density({2, 2}, 4, seed + 100);
    const double s = relative_entropy(rho, sigma);
    EXPECT_GE(s, 0.0);
    const int keep[] = {0};
    EXPECT_LE(relative_entropy(partial_trace(rho, keep), partial_trace(sigma, keep)), s + 1e-10);
    EXPECT_LE(trace_distance(partial_trace(rho, keep), partial_trace(sigma, keep)),
              trace_distance(rho, sigma) + 1e-12);
  }
}

TEST(Random, DensityContracts) {
  const auto a = random_density({2, 2}, 4, 7);
  const auto b = random_density({2, 2}, 4, 7);
  EXPECT_EQ((a.matrix() - b.matrix()).norm(), 0.0);
  EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_GE(min_eigenvalue(a.matrix()), -1e-12);
  EXPECT_NEAR(random_density({2, 3}, 1, 9).purity(), 1.0, 1e-10);
  EXPECT_NEAR(random_pure({2, 2, 2}, 9).purity(), 1.0, 1e-10);
  EXPECT_THROW(random_density({2, 2}, 0, 1), Error);
}

TEST(Random, HaarUnitaryIsUnitary) {
  Rng rng(4);
  for (int n : {2, 3, 8}) {
    const Matrix u = haar_unitary(n, rng);
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Random, SeparableDrawsArePpt) {
  Rng rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const Matrix m = random_separable_matrix({2, 2}, 1 + rng.index(16), rng);
    EXPECT_GE(min_eigenvalue(partial_transpose(m, Dims{2, 2}, std::vector<int>{1})), -1e-12);
  }
}

TEST(Partition, ParseAndValidate) {
  const auto p = Partition::parse("A|BC");
  EXPECT_EQ(p.first, std::vector<int>{0});
  EXPECT_EQ(p.second, (std::vector<int>{1, 2}));
  EXPECT_EQ(Partition::parse("0,2|1").first, (std::vector<int>{0, 2}));
  EXPECT_THROW(Partition::parse("01"), Error);
  EXPECT_THROW(Partition::parse("|1"), Error);
  EXPECT_THROW((Partition{{0}, {0}}.validate(2)), Error);
  EXPECT_THROW((Partition{{0}, {2}}.validate(2)), Error);
}

TEST(Tensor, TensorAndPartialTraceRoundTrip) {
  const auto a = random_density({2}, 2, 3);
  const auto b = random_density({3}, 2, 4);
  const auto ab = tensor(a, b);
  EXPECT_EQ(ab.dims(), (Dims{2, 3}));
  const int keep0[] = {0};
  const int keep1[] = {1};
  EXPECT_LT((partial_trace(ab, keep0).matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, keep1).matrix() - b.matrix()).norm(), 1e-12);
}

TEST(StateIo, RoundTripIsExact) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto rho = random_density({2, 3}, 3, seed);
    const auto back = state_from_json(state_to_json(rho));
    EXPECT_EQ(back.dims(), rho.dims());
    EXPECT_EQ((back.matrix() - rho.matrix()).norm(), 0.0);
    EXPECT_EQ(state_to_json(back), state_to_json(rho));
  }
}

std::string json_error(const std::string& text) {
  try {
    state_from_json(text);
  } catch (const InvariantError& e) {
    return e.invariant();
  }
  return "";
}

TEST(StateIo, RejectsWithInvariantName) {
  EXPECT_EQ(json_error("{\"dims\": [2]"), "json");
  EXPECT_EQ(json_error("{\"matrix\": [[[1,0]]]}"), "json");
  EXPECT_EQ(json_error("{\"dims\": [2], \"matrix\": [[[1,0]]]}"), "shape");
  EXPECT_EQ(json_error("{\"dims\": [2], \"matrix\": [[[0.5,0],[0,0]],[[0,0],[0.6,0]]]}"), "unit-trace");
  EXPECT_EQ(json_error("{\"dims\": [2], \"matrix\": [[[0.5,0],[0.1,0]],[[0,0],[0.5,0]]]}"), "hermitian");
  EXPECT_EQ(json_error("{\"dims\": [2], \"matrix\": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}"), "psd");
  EXPECT_EQ(json_error("{\"dims\": [1], \"matrix\": [[[1,0]]]}"), "");
}

}  // namespace
}  // namespace epsent
