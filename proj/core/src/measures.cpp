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

#include "epsent/measures.hpp"

#include <algorithm>
#include <cmath>

#include "epsent/error.hpp"

namespace epsent {
namespace {

constexpr double kFdStep = 1e-6;

bool is_two_qubit(Measure m) { return m == Measure::Concurrence2Q || m == Measure::Tangle2Q; }

Matrix spin_flip() {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

// Orthonormal basis of the traceless Hermitian k x k matrices.
std::vector<Matrix> traceless_basis(int k) {
  std::vector<Matrix> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      Matrix re = Matrix::Zero(k, k);
      re(i, j) = re(j, i) = inv_sqrt2;
      out.push_back(std::move(re));
      Matrix im = Matrix::Zero(k, k);
      im(i, j) = Complex(0.0, -inv_sqrt2);
      im(j, i) = Complex(0.0, inv_sqrt2);
      out.push_back(std::move(im));
    }
  }
  for (int m = 1; m < k; ++m) {
    Matrix d = Matrix::Zero(k, k);
    const double norm = std::sqrt(static_cast<double>(m * (m + 1)));
    for (int l = 0; l < m; ++l) d(l, l) = 1.0 / norm;
    d(m, m) = -static_cast<double>(m) / norm;
    out.push_back(std::move(d));
  }
  return out;
}

Matrix sign_matrix(const Matrix& h) {
  return spectral_apply(hermitian_eigen_sym(h), [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

}  // namespace

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Negativity: return "Negativity";
    case Measure::SquaredNegativity: return "SquaredNegativity";
    case Measure::Concurrence2Q: return "Concurrence2Q";
    case Measure::Tangle2Q: return "Tangle2Q";
    case Measure::TraceDistToSep: return "TraceDistToSep";
    case Measure::RelEntToSep: return "RelEntToSep";
  }
  return "?";
}

std::string to_string(Distance d) { return d == Distance::Trace ? "trace" : "relent"; }

Measure parse_measure(const std::string& name) {
  std::string lower(name.size(), ' ');
  std::transform(name.begin(), name.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Measure m : {Measure::Negativity, Measure::SquaredNegativity, Measure::Concurrence2Q, Measure::Tangle2Q,
                    Measure::TraceDistToSep, Measure::RelEntToSep}) {
    std::string candidate = to_string(m);
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (candidate == lower) return m;
  }
  if (lower == "concurrence") return Measure::Concurrence2Q;
  if (lower == "tangle") return Measure::Tangle2Q;
  throw Error("unknown measure '" + name + "'");
}

Distance parse_distance(const std::string& name) {
  if (name == "trace") return Distance::Trace;
  if (name == "relent") return Distance::RelEnt;
  throw Error("unknown distance '" + name + "' (expected trace or relent)");
}

void MeasureKind::validate(const Dims& dims) const {
  partition.validate(static_cast<int>(dims.size()));
  if (!is_two_qubit(kind)) return;
  if (partition.first.size() != 1 || partition.second.size() != 1 ||
      dims[static_cast<std::size_t>(partition.first[0])] != 2 ||
      dims[static_cast<std::size_t>(partition.second[0])] != 2)
    throw Error(to_string(kind) + " requires a partition of two single qubits");
}

double min_pt_eigenvalue(const Matrix& rho, const Dims& dims, const Partition& partition) {
  const auto view = reduce_to_partition(rho, dims, partition);
  return min_eigenvalue(partial_transpose(view.mat, view.dims, view.second));
}

double negativity(const Matrix& rho, const Dims& dims, const Partition& partition) {
  const auto view = reduce_to_partition(rho, dims, partition);
  const auto es = hermitian_eigen_sym(partial_transpose(view.mat, view.dims, view.second));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) neg -= std::min(es.values(i), 0.0);
  return neg;
}

double concurrence(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw Error("concurrence: expected a 4x4 matrix");
  const Matrix yy = spin_flip();
  const Matrix flipped = yy * rho4.conjugate() * yy;
  const Matrix root = spectral_apply(hermitian_eigen_sym(rho4), [](double x) { return std::sqrt(std::max(x, 0.0)); });
  const auto es = hermitian_eigen_sym(root * flipped * root);
  double lam[4];
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(es.values(i), 0.0));
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double pure_state_tangle(const DensityMatrix& pure, int qubit) {
  if (qubit < 0 || qubit >= pure.parties()) throw Error("pure_state_tangle: party index out of range");
  if (pure.dims()[static_cast<std::size_t>(qubit)] != 2) throw Error("pure_state_tangle: party is not a qubit");
  const int keep[] = {qubit};
  const Matrix q = epsent::partial_trace(pure.matrix(), pure.dims(), keep);
  return std::max(0.0, 4.0 * (q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0)).real());
}

double evaluate(const MeasureKind& kind, const DensityMatrix& rho) { return evaluate(kind, rho.matrix(), rho.dims()); }

double evaluate(const MeasureKind& kind, const Matrix& rho, const Dims& dims) {
  MeasureEvaluator evaluator(kind, dims);
  return evaluator.value(rho);
}

MeasureEvaluator::MeasureEvaluator(MeasureKind kind, Dims dims) : kind_(std::move(kind)), dims_(std::move(dims)) {
  kind_.validate(dims_);
}

double MeasureEvaluator::value(const Matrix& rho) {
  switch (kind_.kind) {
    case Measure::Negativity: return negativity(rho, dims_, kind_.partition);
    case Measure::SquaredNegativity: {
      const double n = negativity(rho, dims_, kind_.partition);
      return n * n;
    }
    case Measure::Concurrence2Q:
    case Measure::Tangle2Q: {
      const double c = concurrence(reduce_to_partition(rho, dims_, kind_.partition).mat);
      return kind_.kind == Measure::Tangle2Q ? c * c : c;
    }
    case Measure::TraceDistToSep:
    case Measure::RelEntToSep: {
      SepSearchOptions options;
      if (warm_) options.warm_start = &*warm_;
      const auto distance = kind_.kind == Measure::TraceDistToSep ? Distance::Trace : Distance::RelEnt;
      const auto result =
          distance_to_sep(DensityMatrix::trusted(dims_, hermitian_part(rho)), distance, kind_.partition, options);
      warm_ = result.closest_sep.matrix();
      return std::max(0.0, result.value);
    }
  }
  return 0.0;
}

ValueGradient MeasureEvaluator::value_and_subgradient(const Matrix& rho) {
  const auto& partition = kind_.partition;
  switch (kind_.kind) {
    case Measure::Negativity:
    case Measure::SquaredNegativity: {
      const auto view = reduce_to_partition(rho, dims_, partition);
      const auto es = hermitian_eigen_sym(partial_transpose(view.mat, view.dims, view.second));
      double neg = 0.0;
      const auto n = es.values.size();
      Matrix projector = Matrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (es.values(i) < 0.0) {
          neg -= es.values(i);
          projector += es.vectors.col(i) * es.vectors.col(i).adjoint();
        }
      }
      Matrix g = -partial_transpose(projector, view.dims, view.second);
      if (!view.full) g = embed_identity(g, dims_, view.covered);
      if (kind_.kind == Measure::SquaredNegativity) return {neg * neg, 2.0 * neg * g};
      return {neg, g};
    }
    case Measure::Concurrence2Q:
    case Measure::Tangle2Q: return finite_difference(rho);
    case Measure::TraceDistToSep:
    case Measure::RelEntToSep: {
      const double v = value(rho);
      const auto view = reduce_to_partition(rho, dims_, partition);
      Matrix g;
      if (kind_.kind == Measure::TraceDistToSep) {
        g = 0.5 * sign_matrix(view.mat - *warm_);
      } else {
        const auto clamp_log = [](double x) { return std::log2(std::max(x, 1e-12)); };
        g = spectral_apply(hermitian_eigen_sym(view.mat), clamp_log) -
            spectral_apply(hermitian_eigen_sym(*warm_), clamp_log);
      }
      if (!view.full) g = embed_identity(g, dims_, view.covered);
      return {v, g};
    }
  }
  return {};
}

// Central differences along a traceless Hermitian basis of the reduced
// two-qubit space; the result is embedded back into the full space.
ValueGradient MeasureEvaluator::finite_difference(const Matrix& rho) {
  const auto view = reduce_to_partition(rho, dims_, kind_.partition);
  const bool squared = kind_.kind == Measure::Tangle2Q;
  const auto f = [&](const Matrix& m) {
    const double c = concurrence(m);
    return squared ? c * c : c;
  };
  const double v = f(view.mat);
  Matrix g = Matrix::Zero(4, 4);
  for (const Matrix& b : traceless_basis(4)) {
    const double up = f(view.mat + kFdStep * b);
    const double down = f(view.mat - kFdStep * b);
    g += ((up - down) / (2.0 * kFdStep)) * b;
  }
  if (!view.full) g = embed_identity(g, dims_, view.covered);
  return {v, g};
}

}  // namespace epsent
