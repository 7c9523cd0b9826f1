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

// Linear algebra kernels against Eigen's own solvers and index-loop
// reference implementations.

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "epsent/error.hpp"
#include "epsent/linalg.hpp"
#include "epsent/random.hpp"

namespace epsent {
namespace {

Matrix random_hermitian(int n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

RealVector reference_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector v = es.eigenvalues().reverse();  // descending
  return v;
}

// Row-major multi-index helpers for the loop references.
std::vector<int> digits(int index, const Dims& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = index % dims[static_cast<std::size_t>(k)];
    index /= dims[static_cast<std::size_t>(k)];
  }
  return out;
}

int number(const std::vector<int>& d, const Dims& dims) {
  int out = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) out = out * dims[k] + d[k];
  return out;
}

Matrix loop_partial_transpose(const Matrix& m, const Dims& dims, const std::vector<int>& parties) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      auto a = digits(i, dims);
      auto b = digits(j, dims);
      for (int p : parties) std::swap(a[static_cast<std::size_t>(p)], b[static_cast<std::size_t>(p)]);
      out(number(a, dims), number(b, dims)) = m(i, j);
    }
  }
  return out;
}

Matrix loop_partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& keep) {
  Dims kept;
  for (int p : keep) kept.push_back(dims[static_cast<std::size_t>(p)]);
  int dk = 1;
  for (int d : kept) dk *= d;
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const auto a = digits(i, dims);
      const auto b = digits(j, dims);
      bool diagonal = true;
      std::vector<int> ak, bk;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        if (std::find(keep.begin(), keep.end(), static_cast<int>(p)) != keep.end()) {
          ak.push_back(a[p]);
          bk.push_back(b[p]);
        } else if (a[p] != b[p]) {
          diagonal = false;
        }
      }
      if (diagonal) out(number(ak, kept), number(bk, kept)) += m(i, j);
    }
  }
  return out;
}

TEST(HermitianEigen, MatchesEigenSelfAdjointSolver) {
  Rng rng(11);
  for (int n : {1, 2, 3, 4, 6, 8, 12, 16, 32}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix h = random_hermitian(n, rng);
      const auto es = hermitian_eigen(h);
      const RealVector ref = reference_eigenvalues(h);
      ASSERT_EQ(es.values.size(), n);
      EXPECT_LT((es.values - ref).cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
      const Matrix rebuilt = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
      EXPECT_LT((rebuilt - h).norm(), 1e-10 * std::max(1.0, h.norm()));
      EXPECT_LT((es.vectors.adjoint() * es.vectors - Matrix::Identity(n, n)).norm(), 1e-10);
    }
  }
}

TEST(HermitianEigen, DegenerateSpectrum) {
  Rng rng(3);
  const Matrix u = haar_unitary(6, rng);
  RealVector v(6);
  v << 2.0, 2.0, 2.0, -1.0, -1.0, 0.5;
  const Matrix h = u * v.cast<Complex>().asDiagonal() * u.adjoint();
  const auto es = hermitian_eigen(h);
  RealVector sorted = v;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
  EXPECT_LT((es.values - sorted).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eigen(m), Error);
  EXPECT_NO_THROW(hermitian_eigen_sym(m));
}

TEST(TraceNorm, MatchesSingularValueSum) {
  Rng rng(5);
  for (int n : {2, 4, 8}) {
    const Matrix h = random_hermitian(n, rng);
    Eigen::JacobiSVD<Matrix> svd(h);
    EXPECT_NEAR(trace_norm(h), svd.singularValues().sum(), 1e-10);
    EXPECT_NEAR(min_eigenvalue(h), reference_eigenvalues(h).minCoeff(), 1e-10);
  }
}

TEST(SpectralFunctions, LogAndSoftThresholdMatchEigen) {
  Rng rng(8);
  for (int n : {2, 4, 8}) {
    const Matrix rho = random_density_matrix(n, n, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const RealVector logs = es.eigenvalues().array().log() / std::log(2.0);
    const Matrix ref_log = es.eigenvectors() * logs.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LT((matrix_log2(rho) - ref_log).norm(), 1e-9);

    const Matrix h = random_hermitian(n, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> eh(h);
    RealVector shrunk = eh.eigenvalues();
    for (Eigen::Index i = 0; i < shrunk.size(); ++i)
      shrunk(i) = std::copysign(std::max(std::abs(shrunk(i)) - 0.3, 0.0), shrunk(i));
    const Matrix ref_soft = eh.eigenvectors() * shrunk.cast<Complex>().asDiagonal() * eh.eigenvectors().adjoint();
    EXPECT_LT((soft_threshold(h, 0.3) - ref_soft).norm(), 1e-10);
  }
}

// Reference simplex projection: x = max(v - theta, 0) with theta found by
// bisection on the (monotone) total mass.
RealVector bisect_simplex(const RealVector& v, double total) {
  double lo = v.minCoeff() - total - 1.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mass = (v.array() - mid).max(0.0).sum();
    (mass > total ? lo : hi) = mid;
  }
  return (v.array() - 0.5 * (lo + hi)).max(0.0);
}

TEST(Projections, SimplexMatchesBisection) {
  Rng rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rng.index(10);
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = 2.0 * rng.normal();
    const double total = rep % 2 ? 1.0 : 0.3;
    EXPECT_LT((project_simplex(v, total) - bisect_simplex(v, total)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

// Reference for {sum x = 0, ||x||_1 <= r}: the KKT point is
// x = soft(v - mu, lambda); mu balances the sum for fixed lambda and lambda
// is raised until the l1 budget is met.
RealVector bisect_l1_zero_sum(const RealVector& v, double radius) {
  const auto solve_mu = [&](double lambda) {
    double lo = v.minCoeff() - lambda - 1.0;
    double hi = v.maxCoeff() + lambda + 1.0;
    RealVector x;
    for (int it = 0; it < 200; ++it) {
      const double mu = 0.5 * (lo + hi);
      x = (v.array() - mu).sign() * ((v.array() - mu).abs() - lambda).max(0.0);
      (x.sum() > 0.0 ? lo : hi) = mu;
    }
    return x;
  };
  RealVector x = solve_mu(0.0);
  if (x.lpNorm<1>() <= radius) return x;
  double lo = 0.0;
  double hi = v.cwiseAbs().maxCoeff() * 2.0 + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (solve_mu(mid).lpNorm<1>() > radius ? lo : hi) = mid;
  }
  return solve_mu(0.5 * (lo + hi));
}

TEST(Projections, L1ZeroSumMatchesKktBisection) {
  Rng rng(22);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rng.index(8);
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    const double radius = 0.05 + rng.uniform();
    const RealVector x = project_l1_zero_sum(v, radius);
    EXPECT_NEAR(x.sum(), 0.0, 1e-12);
    EXPECT_LE(x.lpNorm<1>(), radius + 1e-10);
    EXPECT_LT((x - bisect_l1_zero_sum(v, radius)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Projections, DensityProjectionIsNearestState) {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix h = random_hermitian(4, rng);
    const Matrix p = project_to_density(h);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
    EXPECT_GE(min_eigenvalue(p), -1e-12);
    // Variational inequality <h - p, y - p> <= 0 over random states y.
    for (int k = 0; k < 20; ++k) {
      const Matrix y = random_density_matrix(4, 1 + rng.index(4), rng);
      EXPECT_LE((h - p).cwiseProduct((y - p).conjugate()).sum().real(), 1e-10);
    }
  }
}

TEST(Tensor, KronAndPartialTraceMatchLoops) {
  Rng rng(31);
  const Matrix a = ginibre(2, 2, rng);
  const Matrix b = ginibre(3, 3, rng);
  const Matrix k = kron(a, b);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_EQ(k(i, j), a(i / 3, j / 3) * b(i % 3, j % 3));

  const Dims dims{2, 3, 2};
  const Matrix m = ginibre(12, 12, rng);
  for (const std::vector<int>& keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}}) {
    EXPECT_LT((partial_trace(m, dims, keep) - loop_partial_trace(m, dims, keep)).norm(), 1e-12);
  }
}

TEST(Tensor, EmbedIdentityIsAdjointOfPartialTrace) {
  Rng rng(32);
  const Dims dims{2, 2, 3};
  const std::vector<int> keep{0, 2};
  const Matrix g = ginibre(6, 6, rng);
  const Matrix x = ginibre(12, 12, rng);
  const Complex lhs = (embed_identity(g, dims, keep).adjoint() * x).trace();
  const Complex rhs = (g.adjoint() * partial_trace(x, dims, keep)).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-10);
}

TEST(Tensor, PartialTransposeMatchesLoops) {
  Rng rng(33);
  const Dims dims{2, 3, 2};
  const Matrix m = ginibre(12, 12, rng);
  for (const std::vector<int>& parties : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const Matrix ref = loop_partial_transpose(m, dims, parties);
    EXPECT_LT((partial_transpose(m, dims, parties) - ref).norm(), 1e-12);
    const PartialTransposer pt(dims, parties);
    EXPECT_LT((pt(m) - ref).norm(), 1e-12);
    EXPECT_LT((pt(pt(m)) - m).norm(), 1e-12);
  }
}

TEST(Tensor, DimensionCap) {
  EXPECT_EQ(total_dimension(Dims{2, 2, 2}), 8);
  EXPECT_THROW(total_dimension(Dims{4, 4, 5}), Error);
  EXPECT_THROW(total_dimension(Dims{2, 0}), Error);
}

}  // namespace
}  // namespace epsent
