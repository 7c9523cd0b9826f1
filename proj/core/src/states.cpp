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

#include "epsent/states.hpp"

#include <cmath>

#include "epsent/error.hpp"

namespace epsent::states {

DensityMatrix from_ket(const Dims& dims, const Eigen::VectorXcd& ket) {
  const Eigen::VectorXcd unit = ket / ket.norm();
  return DensityMatrix(dims, unit * unit.adjoint());
}

DensityMatrix basis(const Dims& dims, int index) {
  const int dim = total_dimension(dims);
  if (index < 0 || index >= dim) throw Error("basis: index out of range");
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(dim);
  ket(index) = 1.0;
  return from_ket(dims, ket);
}

DensityMatrix maximally_mixed(const Dims& dims) {
  const int dim = total_dimension(dims);
  return DensityMatrix(dims, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix bell() {
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(4);
  ket(0) = ket(3) = 1.0;
  return from_ket({2, 2}, ket);
}

DensityMatrix werner(double w) {
  if (w < -1.0 / 3.0 || w > 1.0) throw Error("werner: parameter outside [-1/3, 1]");
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  Matrix m = w * singlet * singlet.adjoint() + (1.0 - w) * Matrix::Identity(4, 4) / 4.0;
  return DensityMatrix({2, 2}, m);
}

DensityMatrix isotropic(double f) {
  if (f < 0.0 || f > 1.0) throw Error("isotropic: fidelity outside [0, 1]");
  const Matrix phi = bell().matrix();
  Matrix m = f * phi + (1.0 - f) * (Matrix::Identity(4, 4) - phi) / 3.0;
  return DensityMatrix({2, 2}, m);
}

DensityMatrix ghz(int qubits) {
  if (qubits < 2) throw Error("ghz: need at least two qubits");
  const Dims dims(static_cast<std::size_t>(qubits), 2);
  const int dim = total_dimension(dims);
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(dim);
  ket(0) = ket(dim - 1) = 1.0;
  return from_ket(dims, ket);
}

DensityMatrix w_state() {
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(8);
  ket(1) = ket(2) = ket(4) = 1.0;
  return from_ket({2, 2, 2}, ket);
}

}  // namespace epsent::states
