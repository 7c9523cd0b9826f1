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

// Base entanglement measures and the distance-to-separable measures.
//
// The separable set is represented by the PPT states across the partition.
// For 2x2 and 2x3 systems that set is exact; for larger systems the
// distance measures are "PPT-relative" lower bounds of the true ones.

#pragma once

#include <optional>
#include <string>

#include "epsent/density_matrix.hpp"

namespace epsent {

enum class Measure { Negativity, SquaredNegativity, Concurrence2Q, Tangle2Q, TraceDistToSep, RelEntToSep };
enum class Distance { Trace, RelEnt };

std::string to_string(Measure m);
std::string to_string(Distance d);
Measure parse_measure(const std::string& name);
Distance parse_distance(const std::string& name);

struct MeasureKind {
  Measure kind = Measure::Negativity;
  Partition partition = bipartition();

  /// Throws epsent::Error when the partition does not fit `dims` or a
  /// two-qubit measure is used on anything but single qubits.
  void validate(const Dims& dims) const;
};

/// Entanglement measure value, clamped at zero from below.
double evaluate(const MeasureKind& kind, const DensityMatrix& rho);
double evaluate(const MeasureKind& kind, const Matrix& rho, const Dims& dims);

double negativity(const Matrix& rho, const Dims& dims, const Partition& partition);
/// Wootters concurrence of a two-qubit state.
double concurrence(const Matrix& rho4);
/// Smallest eigenvalue of the partial transpose across the partition.
double min_pt_eigenvalue(const Matrix& rho, const Dims& dims, const Partition& partition);

/// Tangle between one qubit and the rest of a pure state: 4 det(rho_q).
double pure_state_tangle(const DensityMatrix& pure, int qubit);

struct DistanceMeasureResult {
  double value = 0.0;
  /// Minimizer on the parties covered by the partition.
  DensityMatrix closest_sep;
  bool converged = false;
  int iterations = 0;
};

struct SepSearchOptions {
  int max_iters = 5000;
  double tol = 1e-8;
  /// Optional starting guess for the separable state (reduced space).
  const Matrix* warm_start = nullptr;
};

/// E_D(rho) = min over PPT sigma of D(rho, sigma).
///
/// Trace distance: consensus ADMM whose steps are projections onto the
/// density matrices and onto their partial-transpose image, plus the trace
/// norm prox. Relative entropy: log-barrier path following with BFGS inner
/// iterations. The returned value is D(rho, closest_sep) for a witness that
/// is PPT and a valid state.
DistanceMeasureResult distance_to_sep(const DensityMatrix& rho, Distance distance, const Partition& partition,
                                      const SepSearchOptions& options = {});

/// Values of both sides of E_D((1 - p) rho + p sigma*) = (1 - p) E_D(rho)
/// for the trace distance.
struct MixingIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  bool converged = false;
};
MixingIdentity mixing_identity_check(const DensityMatrix& rho, double p, const Partition& partition = bipartition());

/// Value plus a subgradient (Hermitian, on the full space of `dims`).
struct ValueGradient {
  double value = 0.0;
  Matrix gradient;
};

/// Evaluates a measure repeatedly on states of one shape, keeping warm
/// starts for the inner optimizations of the distance measures.
class MeasureEvaluator {
 public:
  MeasureEvaluator(MeasureKind kind, Dims dims);

  const MeasureKind& kind() const noexcept { return kind_; }
  const Dims& dims() const noexcept { return dims_; }

  double value(const Matrix& rho);
  ValueGradient value_and_subgradient(const Matrix& rho);

 private:
  ValueGradient finite_difference(const Matrix& rho);

  MeasureKind kind_;
  Dims dims_;
  std::optional<Matrix> warm_;
};

}  // namespace epsent
