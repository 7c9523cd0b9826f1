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

// LOCC channels built from families that are LOCC by construction. Nothing
// here decides whether an arbitrary channel is LOCC.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epsent/density_matrix.hpp"
#include "epsent/measures.hpp"
#include "epsent/solver.hpp"

namespace epsent {

/// sum_k w_k (x)_i factors[k][i], a separable state by construction.
struct SeparableState {
  std::vector<double> weights;
  std::vector<std::vector<Matrix>> factors;

  Matrix matrix() const;
  Dims dims() const;
};

/// One unitary per party.
struct LocalUnitary {
  std::vector<Matrix> unitaries;
};

/// rho -> (1 - p) rho + p sigma.
struct Mix {
  double p = 0.0;
  SeparableState sigma;
};

/// Local measurement with operators P_i on one party, sum P_i^dagger P_i = I.
/// As a channel the outcome is forgotten.
struct LocalInstrument {
  int party = 0;
  std::vector<Matrix> projectors;
};

/// X -> X (x) tau, tau becoming the last party.
struct AttachParty {
  DensityMatrix tau;
};

struct DiscardParty {
  int index = 0;
};

/// sigma -> P sigma P + (1 - tr P sigma P) sigma_sep with P the product of
/// the local support projectors of `reference` (see preprocess_local_support).
struct SupportProjection {
  DensityMatrix reference;
};

/// One-way LOCC: `measured_party` measures with `projectors`, announces the
/// outcome i, and `target_party` replaces its system by preparations[i].
struct MeasurePrepare {
  int measured_party = 0;
  std::vector<Matrix> projectors;
  int target_party = 1;
  std::vector<Matrix> preparations;
};

struct ChannelSpec {
  std::variant<LocalUnitary, Mix, LocalInstrument, AttachParty, DiscardParty, SupportProjection, MeasurePrepare> op;

  std::string kind() const;
  /// Throws epsent::Error when the channel cannot act on states of `dims`.
  void validate(const Dims& dims) const;
};

struct Outcome {
  double probability = 0.0;
  DensityMatrix state;
};

/// Branches of a measurement; probabilities sum to one.
struct OutcomeEnsemble {
  std::vector<Outcome> branches;

  /// sum_i p_i state_i.
  Matrix average() const;
};

/// Deterministic channel output; instruments are averaged over outcomes.
DensityMatrix apply(const ChannelSpec& channel, const DensityMatrix& rho);

/// Branch i: p_i = tr(P_i rho P_i^dagger), state P_i rho P_i^dagger / p_i.
/// Branches with p_i < 1e-12 are dropped.
OutcomeEnsemble apply_instrument(const LocalInstrument& instrument, const DensityMatrix& rho);

/// eta |0><0| (x) rho_ent + (1 - eta) |1><1| (x) rho_sep with
/// eta = min(1, eps / D_tr(rho_ent, rho_sep)). The ancilla is party 0 and
/// belongs to the first block of the partition used on it.
struct MoaCounterexample {
  DensityMatrix rho;
  double eta = 0.0;
};
MoaCounterexample moa_counterexample(const DensityMatrix& rho_ent, const DensityMatrix& rho_sep, double epsilon,
                                     const MeasureKind& measure = {}, const SolverCfg& cfg = {});

/// The partition to use on moa_counterexample states: the ancilla joins
/// the first block of `partition`.
Partition with_ancilla(const Partition& partition);

/// Uniform over LocalUnitary (Haar), Mix (random separable state, random p),
/// an averaged LocalInstrument (random local basis) and MeasurePrepare.
ChannelSpec random_locc(const Dims& dims, std::uint64_t seed);

/// Embeds an operator on one party into the full space of `dims`.
Matrix local_operator(const Matrix& op, const Dims& dims, int party);

std::string channel_to_json(const ChannelSpec& channel);
ChannelSpec channel_from_json(std::string_view text);

}  // namespace epsent
