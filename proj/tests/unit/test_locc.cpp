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

#include <set>

#include <gtest/gtest.h>

#include "epsent/error.hpp"
#include "epsent/locc.hpp"
#include "epsent/random.hpp"
#include "epsent/states.hpp"

namespace epsent {
namespace {

const MeasureKind kNeg{Measure::Negativity, bipartition()};

Matrix projector(int dim, int k) {
  Matrix p = Matrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

TEST(Locc, RandomChannelsAreTracePreservingAndMonotone) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto channel = random_locc({2, 2}, seed);
    EXPECT_NO_THROW(channel.validate({2, 2}));
    const auto rho = random_density({2, 2}, 1 + static_cast<int>(seed % 4), seed + 1000);
    const auto out = apply(channel, rho);  // the constructor checks the state invariants
    EXPECT_EQ(out.dims(), rho.dims());
    // The negativity is an LOCC monotone, so no random channel may raise it.
    EXPECT_LE(evaluate(kNeg, out), evaluate(kNeg, rho) + 1e-10) << channel.kind();
  }
}

TEST(Locc, RandomChannelsCoverEveryFamily) {
  std::set<std::string> kinds;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) kinds.insert(random_locc({2, 2}, seed).kind());
  EXPECT_EQ(kinds, (std::set<std::string>{"LocalUnitary", "Mix", "LocalInstrument", "MeasurePrepare"}));
}

TEST(Locc, InstrumentAverageIsTheChannel) {
  const auto rho = random_density({2, 2}, 3, 5);
  const LocalInstrument inst{1, {projector(2, 0), projector(2, 1)}};
  const auto ensemble = apply_instrument(inst, rho);
  double total = 0.0;
  for (const auto& b : ensemble.branches) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LT((ensemble.average() - apply({inst}, rho).matrix()).norm(), 1e-12);
  // Outcomes with zero probability are dropped.
  EXPECT_EQ(apply_instrument(LocalInstrument{0, {projector(2, 0), projector(2, 1)}}, states::basis({2, 2}, 0))
                .branches.size(),
            1u);
}

TEST(Locc, AttachAndDiscard) {
  const auto rho = random_density({2, 2}, 2, 6);
  const auto tau = random_density({3}, 2, 7);
  const auto big = apply({AttachParty{tau}}, rho);
  EXPECT_EQ(big.dims(), (Dims{2, 2, 3}));
  const auto back = apply({DiscardParty{2}}, big);
  EXPECT_LT((back.matrix() - rho.matrix()).norm(), 1e-12);
  EXPECT_THROW(apply({DiscardParty{0}}, states::basis({2}, 0)), Error);
}

TEST(Locc, LocalUnitaryMatchesKron) {
  Rng rng(8);
  const Matrix u = haar_unitary(2, rng);
  const Matrix v = haar_unitary(2, rng);
  const auto rho = random_density({2, 2}, 4, 9);
  const Matrix uv = kron(u, v);
  EXPECT_LT((apply({LocalUnitary{{u, v}}}, rho).matrix() - uv * rho.matrix() * uv.adjoint()).norm(), 1e-12);
  EXPECT_LT((local_operator(u, {2, 2}, 0) - kron(u, Matrix::Identity(2, 2))).norm(), 1e-14);
}

TEST(Locc, MeasurePrepareOutputsSeparableOnTarget) {
  const auto phi = states::bell();
  const MeasurePrepare mp{0, {projector(2, 0), projector(2, 1)}, 1, {projector(2, 1), projector(2, 0)}};
  const auto out = apply({mp}, phi);
  EXPECT_NEAR(evaluate(kNeg, out), 0.0, 1e-12);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.5, 1e-12);  // |0> on A, |1> prepared on B
}

TEST(Locc, SupportProjectionFixesReference) {
  const auto psi = states::from_ket({2, 2}, (Eigen::VectorXcd(4) << 0.6, 0.0, 0.0, 0.8).finished());
  EXPECT_LT((apply({SupportProjection{psi}}, psi).matrix() - psi.matrix()).norm(), 1e-12);
}

TEST(Locc, ValidationErrors) {
  EXPECT_THROW((ChannelSpec{Mix{1.5, {}}}.validate({2, 2})), Error);
  EXPECT_THROW((ChannelSpec{LocalUnitary{{Matrix::Identity(2, 2)}}}.validate({2, 2})), Error);
  EXPECT_THROW((ChannelSpec{LocalInstrument{0, {projector(2, 0)}}}.validate({2, 2})), Error);
  EXPECT_THROW((ChannelSpec{LocalInstrument{3, {projector(2, 0), projector(2, 1)}}}.validate({2, 2})), Error);
}

TEST(Locc, JsonRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto channel = random_locc({2, 2}, seed);
    const std::string text = channel_to_json(channel);
    const auto back = channel_from_json(text);
    EXPECT_EQ(back.kind(), channel.kind());
    EXPECT_EQ(channel_to_json(back), text);
    const auto rho = random_density({2, 2}, 4, seed);
    EXPECT_LT((apply(back, rho).matrix() - apply(channel, rho).matrix()).norm(), 1e-12);
  }
  EXPECT_THROW(channel_from_json("{\"kind\": \"Teleport\"}"), Error);
  EXPECT_THROW(channel_from_json("[1, 2"), Error);
}

TEST(MoaCounterexample, BellAgainstMaximallyMixed) {
  const auto ce = moa_counterexample(states::bell(), states::maximally_mixed({2, 2}), 0.1);
  EXPECT_NEAR(ce.eta, 2.0 / 15.0, 1e-12);  // 0.1 / D_tr(Phi+, I/4) = 0.1 / 0.75
  EXPECT_EQ(ce.rho.dims(), (Dims{2, 2, 2}));
  EXPECT_EQ(with_ancilla(bipartition()).first, (std::vector<int>{0, 1}));
  EXPECT_EQ(with_ancilla(bipartition()).second, (std::vector<int>{2}));
  // Replacing Phi+ by I/4 in the first branch gives a separable state at
  // trace distance eta D_tr(Phi+, I/4) = eps.
  Matrix flags = Matrix::Zero(2, 2);
  flags(0, 0) = ce.eta;
  flags(1, 1) = 1.0 - ce.eta;
  const auto sep = tensor(DensityMatrix({2}, flags), states::maximally_mixed({2, 2}));
  EXPECT_NEAR(trace_distance(ce.rho, sep), 0.1, 1e-12);
}

TEST(MoaCounterexample, Errors) {
  const auto phi = states::bell();
  const auto mixed = states::maximally_mixed({2, 2});
  EXPECT_THROW(moa_counterexample(phi, mixed, -0.1), Error);
  EXPECT_THROW(moa_counterexample(phi, phi, 0.1), Error);                        // not PPT
  EXPECT_THROW(moa_counterexample(mixed, mixed, 0.1), Error);                    // coincide
  EXPECT_THROW(moa_counterexample(phi, states::maximally_mixed({2, 3}), 0.1), Error);
  EXPECT_THROW(moa_counterexample(phi, mixed, 0.6), Error);                      // E_eps(Phi+) = 0
}

}  // namespace
}  // namespace epsent
