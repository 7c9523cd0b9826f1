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

#include "epsent/density_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "epsent/error.hpp"

namespace epsent {

void validate_state(std::span<const int> dims, const Matrix& mat) {
  if (dims.empty()) throw InvariantError("dims", "at least one party is required");
  for (int d : dims)
    if (d <= 0) throw InvariantError("dims", "local dimensions must be positive");
  const int total = total_dimension(dims);
  if (mat.rows() != total || mat.cols() != total)
    throw InvariantError("shape", "matrix side must equal the product of dims");
  if (!mat.allFinite()) throw InvariantError("finite", "matrix has non-finite entries");
  const double defect = max_hermitian_defect(mat);
  if (defect > kHermitianTol)
    throw InvariantError("hermitian", "max |m - m^dagger| = " + std::to_string(defect));
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw InvariantError("unit-trace", "trace = " + std::to_string(tr));
  const double lo = min_eigenvalue(mat);
  if (lo < -kPsdSlack) throw InvariantError("psd", "minimum eigenvalue = " + std::to_string(lo));
}

DensityMatrix::DensityMatrix(Dims dims, Matrix mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
  validate_state(dims_, mat_);
  mat_ = hermitian_part(mat_);
}

DensityMatrix::DensityMatrix(Trusted, Dims dims, Matrix mat) : dims_(std::move(dims)), mat_(hermitian_part(mat)) {}

DensityMatrix DensityMatrix::trusted(Dims dims, Matrix mat) {
  if (total_dimension(dims) != mat.rows() || mat.rows() != mat.cols())
    throw InvariantError("shape", "matrix side must equal the product of dims");
  return DensityMatrix(Trusted{}, std::move(dims), std::move(mat));
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

void Partition::validate(int parties) const {
  if (first.empty() || second.empty()) throw Error("partition: blocks must be nonempty");
  auto all = first;
  all.insert(all.end(), second.begin(), second.end());
  for (int p : all)
    if (p < 0 || p >= parties) throw Error("partition: party index " + std::to_string(p) + " out of range");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw Error("partition: blocks overlap");
}

std::vector<int> Partition::covered() const {
  auto all = first;
  all.insert(all.end(), second.begin(), second.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  auto block = [&](const std::vector<int>& b) {
    for (std::size_t k = 0; k < b.size(); ++k) out << (k ? "," : "") << b[k];
  };
  block(first);
  out << '|';
  block(second);
  return out.str();
}

Partition Partition::parse(const std::string& spec) {
  const auto bar = spec.find('|');
  if (bar == std::string::npos || spec.find('|', bar + 1) != std::string::npos)
    throw Error("partition: expected exactly one '|' in \"" + spec + "\"");
  auto parse_block = [&](const std::string& text) {
    std::vector<int> out;
    std::string digits;
    auto flush = [&] {
      if (!digits.empty()) out.push_back(std::stoi(digits));
      digits.clear();
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        flush();
        out.push_back(std::toupper(static_cast<unsigned char>(c)) - 'A');
      } else if (c == ',' || c == ' ' || c == '(' || c == ')') {
        flush();
      } else {
        throw Error("partition: unexpected character in \"" + spec + "\"");
      }
    }
    flush();
    return out;
  };
  Partition p{parse_block(spec.substr(0, bar)), parse_block(spec.substr(bar + 1))};
  if (p.first.empty() || p.second.empty()) throw Error("partition: blocks must be nonempty");
  return p;
}

Partition bipartition() { return Partition{{0}, {1}}; }

ReducedView reduce_to_partition(const Matrix& mat, std::span<const int> dims, const Partition& partition) {
  partition.validate(static_cast<int>(dims.size()));
  ReducedView view;
  view.covered = partition.covered();
  view.full = view.covered.size() == dims.size();
  view.mat = view.full ? mat : partial_trace(mat, dims, view.covered);
  for (int p : view.covered) view.dims.push_back(dims[static_cast<std::size_t>(p)]);
  for (int p : partition.second) {
    const auto it = std::find(view.covered.begin(), view.covered.end(), p);
    view.second.push_back(static_cast<int>(it - view.covered.begin()));
  }
  std::sort(view.second.begin(), view.second.end());
  return view;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b, int cap) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  total_dimension(dims, cap);
  return DensityMatrix(std::move(dims), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  Matrix reduced = epsent::partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  Dims dims;
  for (int p : kept) dims.push_back(rho.dims()[static_cast<std::size_t>(p)]);
  return DensityMatrix::trusted(std::move(dims), std::move(reduced));
}

Matrix partial_transpose(const DensityMatrix& rho, int party) {
  if (party < 0 || party >= rho.parties()) throw Error("partial_transpose: invalid party index");
  const int parties[] = {party};
  return epsent::partial_transpose(rho.matrix(), rho.dims(), parties);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw Error("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho - sigma);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw Error("trace_distance: dimension mismatch");
  return trace_distance(rho.matrix(), sigma.matrix());
}

double entropy(const Matrix& rho) {
  const auto es = hermitian_eigen_sym(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double x = es.values(k);
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error("relative_entropy: dimension mismatch");
  const auto es = hermitian_eigen_sym(sigma);
  double cross = 0.0;
  double leaked = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double weight = (es.vectors.col(k).adjoint() * rho * es.vectors.col(k))(0, 0).real();
    if (es.values(k) > kSupportTol)
      cross += weight * std::log2(es.values(k));
    else
      leaked += weight;
  }
  if (leaked > kSupportTol) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -entropy(rho) - cross);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims() != sigma.dims()) throw Error("relative_entropy: dimension mismatch");
  return relative_entropy(rho.matrix(), sigma.matrix());
}

}  // namespace epsent
