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

#include "epsent/locc.hpp"

#include <cmath>

#include <json.hpp>

#include "epsent/error.hpp"
#include "epsent/random.hpp"
#include "solver_detail.hpp"

namespace epsent {
namespace {

using nlohmann::json;

constexpr double kChannelTol = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int party_dim(const Dims& dims, int party, const char* what) {
  if (party < 0 || party >= static_cast<int>(dims.size()))
    throw Error(std::string(what) + ": party index " + std::to_string(party) + " out of range");
  return dims[static_cast<std::size_t>(party)];
}

void check_complete(const std::vector<Matrix>& ops, int dim, const char* what) {
  if (ops.empty()) throw Error(std::string(what) + ": no measurement operators");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& p : ops) {
    if (p.rows() != dim || p.cols() != dim) throw Error(std::string(what) + ": operator has the wrong size");
    sum += p.adjoint() * p;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kChannelTol)
    throw Error(std::string(what) + ": operators do not sum to the identity");
}

void check_local_state(const Matrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) throw Error(std::string(what) + ": local state has the wrong size");
  const int dims[] = {dim};
  try {
    validate_state(dims, m);
  } catch (const InvariantError& e) {
    throw Error(std::string(what) + ": local state is invalid (" + e.what() + ")");
  }
}

Matrix local_kron(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Ones(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error("channel json: matrix must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error("channel json: matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw Error("channel json: entries must be [re, im] pairs");
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json matrices_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const Matrix& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const json& j) {
  if (!j.is_array()) throw Error("channel json: expected a list of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json state_json(const DensityMatrix& s) { return {{"dims", s.dims()}, {"matrix", matrix_to_json(s.matrix())}}; }

DensityMatrix state_from(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
    throw Error("channel json: state needs \"dims\" and \"matrix\"");
  return DensityMatrix(j.at("dims").get<Dims>(), matrix_from_json(j.at("matrix")));
}

Matrix random_product_factor(int dim, Rng& rng) { return random_density_matrix(dim, 1 + rng.index(dim), rng); }

std::vector<Matrix> basis_projectors(int dim, Rng& rng) {
  const Matrix u = haar_unitary(dim, rng);
  std::vector<Matrix> out;
  for (int j = 0; j < dim; ++j) out.push_back(u.col(j) * u.col(j).adjoint());
  return out;
}

}  // namespace

Matrix SeparableState::matrix() const {
  if (weights.empty() || weights.size() != factors.size()) throw Error("separable state: weights and terms differ");
  Matrix out = weights[0] * local_kron(factors[0]);
  for (std::size_t k = 1; k < weights.size(); ++k) out += weights[k] * local_kron(factors[k]);
  return out;
}

Dims SeparableState::dims() const {
  Dims out;
  if (!factors.empty())
    for (const Matrix& f : factors[0]) out.push_back(static_cast<int>(f.rows()));
  return out;
}

Matrix local_operator(const Matrix& op, const Dims& dims, int party) {
  party_dim(dims, party, "local_operator");
  Matrix out = Matrix::Ones(1, 1);
  for (int p = 0; p < static_cast<int>(dims.size()); ++p) {
    const int d = dims[static_cast<std::size_t>(p)];
    out = kron(out, p == party ? op : Matrix(Matrix::Identity(d, d)));
  }
  return out;
}

std::string ChannelSpec::kind() const {
  return std::visit(Overloaded{[](const LocalUnitary&) { return "LocalUnitary"; },
                               [](const Mix&) { return "Mix"; },
                               [](const LocalInstrument&) { return "LocalInstrument"; },
                               [](const AttachParty&) { return "AttachParty"; },
                               [](const DiscardParty&) { return "DiscardParty"; },
                               [](const SupportProjection&) { return "SupportProjection"; },
                               [](const MeasurePrepare&) { return "MeasurePrepare"; }},
                    op);
}

void ChannelSpec::validate(const Dims& dims) const {
  std::visit(
      Overloaded{
          [&](const LocalUnitary& c) {
            if (c.unitaries.size() != dims.size()) throw Error("LocalUnitary: need one unitary per party");
            for (std::size_t p = 0; p < dims.size(); ++p) {
              const Matrix& u = c.unitaries[p];
              if (u.rows() != dims[p] || u.cols() != dims[p]) throw Error("LocalUnitary: unitary has the wrong size");
              if ((u.adjoint() * u - Matrix::Identity(dims[p], dims[p])).cwiseAbs().maxCoeff() > kChannelTol)
                throw Error("LocalUnitary: matrix is not unitary");
            }
          },
          [&](const Mix& c) {
            if (!(c.p >= 0.0 && c.p <= 1.0)) throw Error("Mix: p must lie in [0, 1]");
            if (c.sigma.dims() != dims) throw Error("Mix: separable state has the wrong dims");
            double total = 0.0;
            for (std::size_t k = 0; k < c.sigma.weights.size(); ++k) {
              if (c.sigma.weights[k] < 0.0) throw Error("Mix: negative weight");
              total += c.sigma.weights[k];
              if (c.sigma.factors[k].size() != dims.size()) throw Error("Mix: product term has the wrong length");
              for (std::size_t p = 0; p < dims.size(); ++p) check_local_state(c.sigma.factors[k][p], dims[p], "Mix");
            }
            if (std::abs(total - 1.0) > kChannelTol) throw Error("Mix: weights do not sum to one");
          },
          [&](const LocalInstrument& c) {
            check_complete(c.projectors, party_dim(dims, c.party, "LocalInstrument"), "LocalInstrument");
          },
          [&](const AttachParty& c) {
            Dims joined = dims;
            joined.insert(joined.end(), c.tau.dims().begin(), c.tau.dims().end());
            total_dimension(joined);
          },
          [&](const DiscardParty& c) {
            party_dim(dims, c.index, "DiscardParty");
            if (dims.size() < 2) throw Error("DiscardParty: cannot discard the only party");
          },
          [&](const SupportProjection& c) {
            if (c.reference.dims() != dims) throw Error("SupportProjection: reference has the wrong dims");
          },
          [&](const MeasurePrepare& c) {
            const int dm = party_dim(dims, c.measured_party, "MeasurePrepare");
            const int dt = party_dim(dims, c.target_party, "MeasurePrepare");
            if (c.measured_party == c.target_party) throw Error("MeasurePrepare: parties must differ");
            check_complete(c.projectors, dm, "MeasurePrepare");
            if (c.preparations.size() != c.projectors.size())
              throw Error("MeasurePrepare: need one preparation per outcome");
            for (const Matrix& prep : c.preparations) check_local_state(prep, dt, "MeasurePrepare");
          }},
      op);
}

Matrix OutcomeEnsemble::average() const {
  if (branches.empty()) throw Error("empty outcome ensemble");
  Matrix out = branches[0].probability * branches[0].state.matrix();
  for (std::size_t k = 1; k < branches.size(); ++k) out += branches[k].probability * branches[k].state.matrix();
  return out;
}

OutcomeEnsemble apply_instrument(const LocalInstrument& instrument, const DensityMatrix& rho) {
  ChannelSpec{instrument}.validate(rho.dims());
  OutcomeEnsemble out;
  for (const Matrix& p : instrument.projectors) {
    const Matrix op = local_operator(p, rho.dims(), instrument.party);
    const Matrix branch = op * rho.matrix() * op.adjoint();
    const double prob = branch.trace().real();
    if (prob < 1e-12) continue;
    out.branches.push_back({prob, DensityMatrix::trusted(rho.dims(), hermitian_part(branch / prob))});
  }
  double total = 0.0;
  for (const auto& b : out.branches) total += b.probability;
  for (auto& b : out.branches) b.probability /= total;
  return out;
}

DensityMatrix apply(const ChannelSpec& channel, const DensityMatrix& rho) {
  channel.validate(rho.dims());
  const Dims& dims = rho.dims();
  return std::visit(
      Overloaded{
          [&](const LocalUnitary& c) {
            const Matrix u = local_kron(c.unitaries);
            return DensityMatrix::trusted(dims, hermitian_part(u * rho.matrix() * u.adjoint()));
          },
          [&](const Mix& c) {
            return DensityMatrix::trusted(dims, hermitian_part((1.0 - c.p) * rho.matrix() + c.p * c.sigma.matrix()));
          },
          [&](const LocalInstrument& c) {
            Matrix out = Matrix::Zero(rho.dim(), rho.dim());
            for (const Matrix& p : c.projectors) {
              const Matrix op = local_operator(p, dims, c.party);
              out += op * rho.matrix() * op.adjoint();
            }
            return DensityMatrix::trusted(dims, hermitian_part(out));
          },
          [&](const AttachParty& c) { return tensor(rho, c.tau); },
          [&](const DiscardParty& c) {
            std::vector<int> keep;
            for (int p = 0; p < rho.parties(); ++p)
              if (p != c.index) keep.push_back(p);
            return partial_trace(rho, keep);
          },
          [&](const SupportProjection& c) { return preprocess_local_support(c.reference, rho).state; },
          [&](const MeasurePrepare& c) {
            std::vector<int> others;
            for (int p = 0; p < rho.parties(); ++p)
              if (p != c.target_party) others.push_back(p);
            Matrix out = Matrix::Zero(rho.dim(), rho.dim());
            for (std::size_t i = 0; i < c.projectors.size(); ++i) {
              const Matrix op = local_operator(c.projectors[i], dims, c.measured_party);
              const Matrix branch = epsent::partial_trace(op * rho.matrix() * op.adjoint(), dims, others);
              out += detail::tensor_in_order(branch, others, c.preparations[i], dims);
            }
            return DensityMatrix::trusted(dims, hermitian_part(out));
          }},
      channel.op);
}

Partition with_ancilla(const Partition& partition) {
  Partition out;
  out.first.push_back(0);
  for (int p : partition.first) out.first.push_back(p + 1);
  for (int p : partition.second) out.second.push_back(p + 1);
  return out;
}

MoaCounterexample moa_counterexample(const DensityMatrix& rho_ent, const DensityMatrix& rho_sep, double epsilon,
                                     const MeasureKind& measure, const SolverCfg& cfg) {
  if (rho_ent.dims() != rho_sep.dims()) throw Error("moa_counterexample: rho_ent and rho_sep have different dims");
  if (!(epsilon >= 0.0)) throw Error("moa_counterexample: epsilon must be nonnegative");
  measure.validate(rho_ent.dims());
  if (min_pt_eigenvalue(rho_sep.matrix(), rho_sep.dims(), measure.partition) < -kPsdSlack)
    throw Error("moa_counterexample: rho_sep is not PPT across the partition");
  const double distance = trace_distance(rho_ent, rho_sep);
  if (!(distance > 0.0)) throw Error("moa_counterexample: rho_ent and rho_sep coincide");
  const auto solved = eps_measure(rho_ent, measure, BallSpec{Distance::Trace, epsilon, rho_ent}, cfg);
  if (!(solved.value > 1e-9)) throw Error("moa_counterexample: the eps-measure of rho_ent vanishes");

  MoaCounterexample out;
  out.eta = std::min(1.0, epsilon / distance);
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  Matrix one = Matrix::Zero(2, 2);
  one(1, 1) = 1.0;
  Dims dims{2};
  dims.insert(dims.end(), rho_ent.dims().begin(), rho_ent.dims().end());
  total_dimension(dims);
  const Matrix m = out.eta * kron(zero, rho_ent.matrix()) + (1.0 - out.eta) * kron(one, rho_sep.matrix());
  out.rho = DensityMatrix(std::move(dims), m);
  return out;
}

ChannelSpec random_locc(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(dims.size());
  int kind = rng.index(4);
  if (kind == 3 && n < 2) kind = 0;
  switch (kind) {
    case 0: {
      LocalUnitary c;
      for (int d : dims) c.unitaries.push_back(haar_unitary(d, rng));
      return {c};
    }
    case 1: {
      Mix c;
      c.p = rng.uniform();
      const int terms = 1 + rng.index(4);
      double total = 0.0;
      for (int k = 0; k < terms; ++k) {
        const double w = -std::log(1.0 - rng.uniform());
        c.sigma.weights.push_back(w);
        total += w;
        std::vector<Matrix> factors;
        for (int d : dims) factors.push_back(random_product_factor(d, rng));
        c.sigma.factors.push_back(std::move(factors));
      }
      for (double& w : c.sigma.weights) w /= total;
      return {c};
    }
    case 2: {
      LocalInstrument c;
      c.party = rng.index(n);
      c.projectors = basis_projectors(dims[static_cast<std::size_t>(c.party)], rng);
      return {c};
    }
    default: {
      MeasurePrepare c;
      c.measured_party = rng.index(n);
      c.target_party = (c.measured_party + 1 + rng.index(n - 1)) % n;
      c.projectors = basis_projectors(dims[static_cast<std::size_t>(c.measured_party)], rng);
      for (std::size_t i = 0; i < c.projectors.size(); ++i)
        c.preparations.push_back(random_product_factor(dims[static_cast<std::size_t>(c.target_party)], rng));
      return {c};
    }
  }
}

std::string channel_to_json(const ChannelSpec& channel) {
  json j = std::visit(
      Overloaded{[](const LocalUnitary& c) { return json{{"unitaries", matrices_to_json(c.unitaries)}}; },
                 [](const Mix& c) {
                   json terms = json::array();
                   for (const auto& f : c.sigma.factors) terms.push_back(matrices_to_json(f));
                   return json{{"p", c.p}, {"weights", c.sigma.weights}, {"factors", terms}};
                 },
                 [](const LocalInstrument& c) {
                   return json{{"party", c.party}, {"projectors", matrices_to_json(c.projectors)}};
                 },
                 [](const AttachParty& c) { return json{{"state", state_json(c.tau)}}; },
                 [](const DiscardParty& c) { return json{{"index", c.index}}; },
                 [](const SupportProjection& c) { return json{{"reference", state_json(c.reference)}}; },
                 [](const MeasurePrepare& c) {
                   return json{{"measured_party", c.measured_party},
                               {"projectors", matrices_to_json(c.projectors)},
                               {"target_party", c.target_party},
                               {"preparations", matrices_to_json(c.preparations)}};
                 }},
      channel.op);
  j["kind"] = channel.kind();
  return j.dump(2) + "\n";
}

ChannelSpec channel_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("channel json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) throw Error("channel json: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "LocalUnitary") return {LocalUnitary{matrices_from_json(j.at("unitaries"))}};
    if (kind == "Mix") {
      Mix c;
      c.p = j.at("p").get<double>();
      c.sigma.weights = j.at("weights").get<std::vector<double>>();
      for (const auto& f : j.at("factors")) c.sigma.factors.push_back(matrices_from_json(f));
      return {c};
    }
    if (kind == "LocalInstrument")
      return {LocalInstrument{j.at("party").get<int>(), matrices_from_json(j.at("projectors"))}};
    if (kind == "AttachParty") return {AttachParty{state_from(j.at("state"))}};
    if (kind == "DiscardParty") return {DiscardParty{j.at("index").get<int>()}};
    if (kind == "SupportProjection") return {SupportProjection{state_from(j.at("reference"))}};
    if (kind == "MeasurePrepare")
      return {MeasurePrepare{j.at("measured_party").get<int>(), matrices_from_json(j.at("projectors")),
                             j.at("target_party").get<int>(), matrices_from_json(j.at("preparations"))}};
  } catch (const json::exception& e) {
    throw Error(std::string("channel json: ") + e.what());
  }
  throw Error("channel json: unknown kind \"" + kind + "\"");
}

}  // namespace epsent
