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

#include "epsent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epsent/error.hpp"

namespace epsent {
namespace {

constexpr int kMaxJacobiSweeps = 100;

EigenSystem jacobi(Matrix a) {
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(1.0, a.norm());
  const double target = 1e-12 * scale;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) < target) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        // A <- A J on columns p, q.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = s * akp + jqq * akq;
        }
        // A <- J^dagger A on rows p, q.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = s * vkp + jqq * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

// Largest level a with sum_i max(v_i - a, 0) = mass; v sorted descending.
double water_level(const std::vector<double>& desc, double mass) {
  double prefix = 0.0;
  const std::size_t n = desc.size();
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += desc[k - 1];
    const double level = (prefix - mass) / static_cast<double>(k);
    if (k == n || desc[k] <= level) return level;
  }
  return (prefix - mass) / static_cast<double>(n);
}

struct MixedRadix {
  std::vector<int> dims;
  std::vector<int> strides;
  int total = 1;

  explicit MixedRadix(std::span<const int> d) : dims(d.begin(), d.end()), strides(d.size()) {
    for (std::size_t k = dims.size(); k-- > 0;) {
      strides[k] = total;
      total *= dims[k];
    }
  }
  int digit(int index, std::size_t party) const { return (index / strides[party]) % dims[party]; }
};

std::vector<int> normalized_parties(std::span<const int> parties, std::size_t n, const char* what) {
  std::vector<int> out(parties.begin(), parties.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int p : out)
    if (p < 0 || static_cast<std::size_t>(p) >= n)
      throw Error(std::string(what) + ": party index " + std::to_string(p) + " out of range");
  return out;
}

// Splits every full index into (kept index, traced index).
void split_indices(const MixedRadix& layout, const std::vector<int>& keep, std::vector<int>& kept,
                   std::vector<int>& traced) {
  const std::size_t n = layout.dims.size();
  std::vector<bool> is_kept(n, false);
  for (int p : keep) is_kept[static_cast<std::size_t>(p)] = true;
  kept.assign(static_cast<std::size_t>(layout.total), 0);
  traced.assign(static_cast<std::size_t>(layout.total), 0);
  for (int i = 0; i < layout.total; ++i) {
    int k = 0;
    int t = 0;
    for (std::size_t party = 0; party < n; ++party) {
      const int d = layout.digit(i, party);
      if (is_kept[party])
        k = k * layout.dims[party] + d;
      else
        t = t * layout.dims[party] + d;
    }
    kept[static_cast<std::size_t>(i)] = k;
    traced[static_cast<std::size_t>(i)] = t;
  }
}

void check_square(const Matrix& m, std::span<const int> dims, const char* what) {
  if (m.rows() != m.cols()) throw Error(std::string(what) + ": matrix is not square");
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error(std::string(what) + ": local dimensions must be positive");
    total *= d;
  }
  if (total != m.rows()) throw Error(std::string(what) + ": dims do not match matrix size");
}

}  // namespace

double max_hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

EigenSystem hermitian_eigen(const Matrix& h) {
  if (h.rows() != h.cols()) throw Error("hermitian_eigen: matrix is not square");
  if (h.size() == 0) return {};
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (max_hermitian_defect(h) > kHermitianTol * scale) throw Error("hermitian_eigen: matrix is not Hermitian");
  return jacobi(hermitian_part(h));
}

EigenSystem hermitian_eigen_sym(const Matrix& h) { return jacobi(hermitian_part(h)); }

double trace_norm(const Matrix& hermitian) { return hermitian_eigen_sym(hermitian).values.cwiseAbs().sum(); }

double min_eigenvalue(const Matrix& hermitian) {
  const auto es = hermitian_eigen_sym(hermitian);
  return es.values(es.values.size() - 1);
}

Matrix matrix_log2(const Matrix& positive_definite) {
  return spectral_apply(hermitian_eigen_sym(positive_definite), [](double x) { return std::log2(x); });
}

RealVector project_simplex(const RealVector& v, double total) {
  std::vector<double> desc(v.data(), v.data() + v.size());
  std::sort(desc.begin(), desc.end(), std::greater<>());
  const double level = water_level(desc, total);
  return (v.array() - level).cwiseMax(0.0).matrix();
}

RealVector project_l1_zero_sum(const RealVector& v, double radius) {
  const RealVector w = v.array() - v.mean();
  if (w.cwiseAbs().sum() <= radius) return w;
  const double half = 0.5 * radius;
  std::vector<double> desc(w.data(), w.data() + w.size());
  std::sort(desc.begin(), desc.end(), std::greater<>());
  const double upper = water_level(desc, half);
  std::vector<double> negated(desc.rbegin(), desc.rend());
  for (double& x : negated) x = -x;
  const double lower = -water_level(negated, half);
  RealVector out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    out(i) = std::max(w(i) - upper, 0.0) - std::max(lower - w(i), 0.0);
  return out;
}

Matrix project_to_density(const Matrix& hermitian) {
  auto es = hermitian_eigen_sym(hermitian);
  es.values = project_simplex(es.values, 1.0);
  return spectral_apply(es, [](double x) { return x; });
}

Matrix soft_threshold(const Matrix& hermitian, double threshold) {
  return spectral_apply(hermitian_eigen_sym(hermitian), [threshold](double x) {
    return x > threshold ? x - threshold : (x < -threshold ? x + threshold : 0.0);
  });
}

int total_dimension(std::span<const int> dims, int cap) {
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error("local dimensions must be positive");
    total *= d;
    if (total > cap) throw Error("dimension cap exceeded");
  }
  return static_cast<int>(total);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep) {
  check_square(m, dims, "partial_trace");
  const auto kept_parties = normalized_parties(keep, dims.size(), "partial_trace");
  if (kept_parties.empty()) throw Error("partial_trace: keep-set is empty");
  const MixedRadix layout(dims);
  std::vector<int> kept, traced;
  split_indices(layout, kept_parties, kept, traced);
  int out_dim = 1;
  for (int p : kept_parties) out_dim *= dims[static_cast<std::size_t>(p)];
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (int i = 0; i < layout.total; ++i)
    for (int j = 0; j < layout.total; ++j)
      if (traced[static_cast<std::size_t>(i)] == traced[static_cast<std::size_t>(j)])
        out(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]) += m(i, j);
  return out;
}

Matrix embed_identity(const Matrix& g, std::span<const int> dims, std::span<const int> keep) {
  const auto kept_parties = normalized_parties(keep, dims.size(), "embed_identity");
  const MixedRadix layout(dims);
  std::vector<int> kept, traced;
  split_indices(layout, kept_parties, kept, traced);
  Matrix out = Matrix::Zero(layout.total, layout.total);
  for (int i = 0; i < layout.total; ++i)
    for (int j = 0; j < layout.total; ++j)
      if (traced[static_cast<std::size_t>(i)] == traced[static_cast<std::size_t>(j)])
        out(i, j) = g(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]);
  return out;
}

Matrix partial_transpose(const Matrix& m, std::span<const int> dims, std::span<const int> parties) {
  check_square(m, dims, "partial_transpose");
  const auto flipped = normalized_parties(parties, dims.size(), "partial_transpose");
  const MixedRadix layout(dims);
  Matrix out(layout.total, layout.total);
  for (int i = 0; i < layout.total; ++i) {
    for (int j = 0; j < layout.total; ++j) {
      int ti = i;
      int tj = j;
      for (int p : flipped) {
        const auto party = static_cast<std::size_t>(p);
        const int di = layout.digit(i, party);
        const int dj = layout.digit(j, party);
        ti += (dj - di) * layout.strides[party];
        tj += (di - dj) * layout.strides[party];
      }
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

PartialTransposer::PartialTransposer(std::span<const int> dims, std::span<const int> parties) {
  const MixedRadix layout(dims);
  const auto flipped = normalized_parties(parties, dims.size(), "partial_transpose");
  dim_ = layout.total;
  target_.resize(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    for (int i = 0; i < dim_; ++i) {
      int ti = i;
      int tj = j;
      for (int p : flipped) {
        const auto party = static_cast<std::size_t>(p);
        const int di = layout.digit(i, party);
        const int dj = layout.digit(j, party);
        ti += (dj - di) * layout.strides[party];
        tj += (di - dj) * layout.strides[party];
      }
      target_[static_cast<std::size_t>(i + j * dim_)] = ti + tj * dim_;
    }
  }
}

Matrix PartialTransposer::operator()(const Matrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) throw Error("partial_transpose: dimension mismatch");
  Matrix out(dim_, dim_);
  const Complex* in = m.data();
  Complex* dst = out.data();
  for (std::size_t k = 0; k < target_.size(); ++k) dst[target_[k]] = in[k];
  return out;
}

}  // namespace epsent
