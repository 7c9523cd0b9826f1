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

#include "epsent_cli/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsent/error.hpp"
#include "epsent/locc.hpp"
#include "epsent/parallel.hpp"
#include "epsent/random.hpp"
#include "epsent/solver.hpp"
#include "epsent/state_io.hpp"
#include "epsent/states.hpp"
#include "epsent/theorems.hpp"

namespace epsent::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Raised for bad flag values that CLI11 cannot see (grid syntax, ...).
struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string state_path;
  std::string measure = "negativity";
  std::string partition;
  std::string distance = "trace";
  std::uint64_t seed = 1;
  int restarts = SolverCfg{}.restarts;
  double tol = SolverCfg{}.tol;
  int max_iters = SolverCfg{}.max_iters;
  int oracle_samples = 0;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, Common& c, bool with_state) {
  if (with_state) cmd->add_option("--state", c.state_path, "State file (JSON)")->required();
  cmd->add_option("--measure", c.measure, "Base measure")->capture_default_str();
  cmd->add_option("--partition", c.partition, "Bipartition, e.g. \"0|1\" or \"A|BC\"");
  cmd->add_option("--distance", c.distance, "Ball distance: trace|relent")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed")->capture_default_str();
  cmd->add_option("--restarts", c.restarts, "Random feasible starts")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", c.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", c.max_iters, "Subgradient iterations per start")->check(CLI::PositiveNumber);
  cmd->add_option("--oracle-samples", c.oracle_samples, "Sampling oracle budget (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", c.out, "Output path (stdout when absent)");
}

SolverCfg solver_cfg(const Common& c) {
  SolverCfg cfg;
  cfg.seed = c.seed;
  cfg.restarts = c.restarts;
  cfg.tol = c.tol;
  cfg.max_iters = c.max_iters;
  cfg.oracle_samples = c.oracle_samples;
  cfg.validate();
  return cfg;
}

MeasureKind measure_kind(const Common& c, const DensityMatrix& rho) {
  MeasureKind kind{parse_measure(c.measure), c.partition.empty() ? bipartition() : Partition::parse(c.partition)};
  kind.validate(rho.dims());
  return kind;
}

std::string csv_number(const std::optional<double>& x) {
  return x ? format_double(*x, 12) : std::string();
}

ordered_json json_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  return *x;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + c.out);
  file << text;
}

struct Row {
  double epsilon = 0.0;
  SolveResult result;
  std::optional<double> lower_probe;
};

Row solve_row(const DensityMatrix& rho, const MeasureKind& kind, Distance distance, double epsilon,
              const SolverCfg& cfg, bool probe) {
  Row row;
  row.epsilon = epsilon;
  row.result = eps_measure(rho, kind, BallSpec{distance, epsilon, rho}, cfg);
  if (probe && distance == Distance::Trace && kind.partition.covered().size() == static_cast<std::size_t>(rho.parties())) {
    const auto lower = thm4_lower_bound_check(rho, kind, epsilon, 4, row.result, cfg);
    if (lower.probes_used > 0) row.lower_probe = lower.min_probe_value;
  }
  return row;
}

const char* kCsvHeader = "epsilon,value,oracle,upper_bound,lower_probe,converged\n";

std::string csv_line(const Row& row) {
  std::ostringstream line;
  line << format_double(row.epsilon, 12) << ',' << format_double(row.result.value, 12) << ','
       << csv_number(row.result.oracle_value) << ',' << csv_number(row.result.upper_bound_thm4) << ','
       << csv_number(row.lower_probe) << ',' << (row.result.converged ? "true" : "false") << '\n';
  return line.str();
}

ordered_json row_json(const Row& row) {
  ordered_json j;
  j["epsilon"] = row.epsilon;
  j["value"] = row.result.value;
  j["oracle_value"] = json_number(row.result.oracle_value);
  j["upper_bound_thm4"] = json_number(row.result.upper_bound_thm4);
  j["lower_probe"] = json_number(row.lower_probe);
  j["converged"] = row.result.converged;
  return j;
}

// "a:b:n" -> n evenly spaced points from a to b inclusive.
std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0, b = 0.0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw UsageError("grid: expected a:b:n, got \"" + text + "\"");
  if (n < 1) throw UsageError("grid: n must be at least 1");
  if (a < 0.0) throw UsageError("grid: epsilon values must be nonnegative");
  if (n > 1 && !(b > a)) throw UsageError("grid: must be strictly increasing (b > a)");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return grid;
}

// --- compute ---------------------------------------------------------------

struct ComputeArgs {
  Common common;
  double epsilon = 0.0;
  bool strict = false;
  bool emit_witness = false;
};

int compute(const ComputeArgs& args, std::ostream& out) {
  const Common& c = args.common;
  if (args.epsilon < 0.0) throw UsageError("epsilon must be nonnegative");
  const auto rho = read_state_file(c.state_path);
  const auto kind = measure_kind(c, rho);
  const Distance distance = parse_distance(c.distance);
  const Row row = solve_row(rho, kind, distance, args.epsilon, solver_cfg(c), false);

  std::string witness_path;
  if (args.emit_witness) {
    const fs::path base = c.out.empty() ? fs::path("result") : fs::path(c.out);
    witness_path = (base.parent_path() / (base.stem().string() + ".witness.json")).string();
    write_state_file(witness_path, row.result.witness);
  }
  if (c.format == "csv") {
    emit(c, std::string(kCsvHeader) + csv_line(row), out);
  } else {
    ordered_json j;
    j["value"] = row.result.value;
    j["oracle_value"] = json_number(row.result.oracle_value);
    j["upper_bound_thm4"] = json_number(row.result.upper_bound_thm4);
    j["converged"] = row.result.converged;
    if (!witness_path.empty()) j["witness_path"] = witness_path;
    emit(c, j.dump(2) + "\n", out);
  }
  return args.strict && !row.result.converged ? kNotConverged : kOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string grid;
};

int sweep(const SweepArgs& args, std::ostream& out) {
  const Common& c = args.common;
  const auto grid = parse_grid(args.grid);
  const auto rho = read_state_file(c.state_path);
  const auto kind = measure_kind(c, rho);
  const Distance distance = parse_distance(c.distance);
  const SolverCfg cfg = solver_cfg(c);
  const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
    SolverCfg point = cfg;
    point.seed = derive_seed(cfg.seed, i);
    return solve_row(rho, kind, distance, grid[i], point, true);
  });
  if (c.format == "json") {
    ordered_json j = ordered_json::array();
    for (const Row& row : rows) j.push_back(row_json(row));
    emit(c, j.dump(2) + "\n", out);
  } else {
    std::string text = kCsvHeader;
    for (const Row& row : rows) text += csv_line(row);
    emit(c, text, out);
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 1;
  int trials = 20;
  double epsilon = 0.05;
  std::vector<std::string> only;
  std::string out;
  std::string format = "table";
  int restarts = SolverCfg{}.restarts;
  double solver_tol = SuiteConfig{}.solver_tol;
};

struct CheckOutput {
  PropertyReport summary;
  std::string json;
};

CheckOutput from(const PropertyReport& r) { return {r, report_to_json(r)}; }
CheckOutput from(const ContinuityReport& r) { return {r.summary(), report_to_json(r)}; }

void append(ContinuityReport& total, const ContinuityReport& part) {
  total.property_id = part.property_id;
  total.tolerance = part.tolerance;
  const bool first = total.entries.empty();
  total.entries.insert(total.entries.end(), part.entries.begin(), part.entries.end());
  total.m_max = std::max(total.m_max, part.m_max);
  total.raw_violations += part.raw_violations;
  total.n_failures += part.n_failures;
  total.worst_violation = first ? part.worst_violation : std::max(total.worst_violation, part.worst_violation);
}

using CheckFn = std::function<CheckOutput(const VerifyArgs&, const SuiteConfig&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"vos", [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_vos(a.trials, a.epsilon, s)); }},
      {"wem", [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_wem(a.trials, a.epsilon, s)); }},
      {"lu", [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_lu(a.trials, a.epsilon, s)); }},
      {"moa", [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_moa(a.epsilon, s)); }},
      {"convexity",
       [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_convexity(a.trials, a.epsilon, s)); }},
      {"te", [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_te(a.trials, a.epsilon, s)); }},
      {"continuity_eps",
       [](const VerifyArgs& a, const SuiteConfig& s) {
         std::vector<double> grid;
         for (int k = 0; k < 10; ++k) grid.push_back(0.02 * (k + 1));
         ContinuityReport total;
         for (int t = 0; t < std::max(1, a.trials / 10); ++t) {
           SuiteConfig local = s;
           local.seed = derive_seed(s.seed, static_cast<std::uint64_t>(t));
           append(total, check_continuity_eps(suite_state(local.seed, true), grid, local));
         }
         return from(total);
       }},
      {"continuity_rho",
       [](const VerifyArgs& a, const SuiteConfig& s) {
         ContinuityReport total;
         const auto rho1 = suite_state(s.seed, true);
         for (double eta : {0.01, 0.05, 0.1}) append(total, check_continuity_rho(rho1, a.trials, eta, a.epsilon, s));
         return from(total);
       }},
      {"lemma_mixing",
       [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_lemma_mixing(a.trials, s)); }},
      {"bounds",
       [](const VerifyArgs& a, const SuiteConfig& s) {
         return from(check_bounds(a.trials, {0.0, 0.2, 0.4, 0.6, 0.8}, s));
       }},
      {"monogamy",
       [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_monogamy(a.trials, a.epsilon, s)); }},
      {"relent_variant",
       [](const VerifyArgs& a, const SuiteConfig& s) { return from(check_relent_variant(a.trials, a.epsilon, s)); }},
      {"vos_relent",
       [](const VerifyArgs& a, const SuiteConfig& s) {
         SuiteConfig local = s;
         local.distance = Distance::RelEnt;
         return from(check_vos(a.trials, a.epsilon, local));
       }},
      {"wem_relent",
       [](const VerifyArgs& a, const SuiteConfig& s) {
         SuiteConfig local = s;
         local.distance = Distance::RelEnt;
         return from(check_wem(a.trials, a.epsilon, local));
       }},
  };
  return checks;
}

int verify(const VerifyArgs& args, std::ostream& out) {
  std::vector<std::string> selected;
  if (args.only.empty()) {
    selected = check_names();
  } else {
    for (const auto& name : args.only) {
      if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
        throw UsageError("unknown check \"" + name + "\"");
      selected.push_back(name);
    }
  }
  if (args.trials < 1) throw UsageError("trials must be positive");
  if (args.epsilon < 0.0) throw UsageError("epsilon must be nonnegative");

  SuiteConfig suite;
  suite.seed = args.seed;
  suite.solver_tol = args.solver_tol;
  suite.solver.restarts = args.restarts;
  if (!args.out.empty()) fs::create_directories(args.out);

  std::vector<CheckOutput> results;
  for (const auto& name : selected) {
    for (const auto& [id, fn] : registry()) {
      if (id != name) continue;
      results.push_back(fn(args, suite));
      if (!args.out.empty()) {
        std::ofstream file(fs::path(args.out) / (id + ".json"), std::ios::binary);
        file << results.back().json;
      }
    }
  }

  int failures = 0;
  for (const auto& r : results) failures += r.summary.n_failures;
  if (args.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : results) j.push_back(ordered_json::parse(r.json));
    out << j.dump(2) << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %7s %5s %9s %14s  %s\n", "check", "trials", "raw", "confirmed",
                  "worst", "status");
    out << line;
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& s = results[k].summary;
      std::snprintf(line, sizeof line, "%-16s %7d %5d %9d %14.6e  %s\n", selected[k].c_str(), s.n_trials,
                    s.raw_violations, s.n_failures, s.worst_violation, s.passed() ? "PASS" : "FAIL");
      out << line;
    }
  }
  return failures == 0 ? kOk : kFailure;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string name;
  double w = 0.5;
  double f = 0.75;
  std::uint64_t seed = 1;
  int rank = 0;
  std::vector<int> dims{2, 2};
  int qubits = 3;
  std::string out;
};

int gen(const GenArgs& args, std::ostream& out) {
  std::string text;
  const Dims dims(args.dims.begin(), args.dims.end());
  if (args.name == "bell") {
    text = state_to_json(states::bell());
  } else if (args.name == "ghz") {
    text = state_to_json(states::ghz(args.qubits));
  } else if (args.name == "w") {
    text = state_to_json(states::w_state());
  } else if (args.name == "werner") {
    text = state_to_json(states::werner(args.w));
  } else if (args.name == "isotropic") {
    text = state_to_json(states::isotropic(args.f));
  } else if (args.name == "mixed") {
    text = state_to_json(states::maximally_mixed(dims));
  } else if (args.name == "random") {
    const int rank = args.rank > 0 ? args.rank : total_dimension(dims);
    text = state_to_json(random_density(dims, rank, args.seed));
  } else if (args.name == "channel") {
    text = channel_to_json(random_locc(dims, args.seed));
  } else {
    throw UsageError("gen: unknown name \"" + args.name + "\"");
  }
  Common sink;
  sink.out = args.out;
  emit(sink, text, out);
  return kOk;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"epsilon-measures of entanglement"};
  app.name("epsent");
  app.require_subcommand(1);

  ComputeArgs compute_args;
  auto* compute_cmd = app.add_subcommand("compute", "E_eps of one state");
  add_common(compute_cmd, compute_args.common, true);
  compute_cmd->add_option("--epsilon", compute_args.epsilon, "Ball radius")->capture_default_str();
  compute_cmd->add_option("--format", compute_args.common.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  compute_cmd->add_flag("--strict", compute_args.strict, "Exit 3 when the solve did not converge");
  compute_cmd->add_flag("--emit-witness", compute_args.emit_witness, "Write the minimizing state next to --out");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "E_eps over an epsilon grid");
  add_common(sweep_cmd, sweep_args.common, true);
  sweep_cmd->add_option("--grid", sweep_args.grid, "a:b:n")->required();
  sweep_cmd->add_option("--format", sweep_args.common.format, "csv|json")->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property checks");
  verify_cmd->add_option("--seed", verify_args.seed)->capture_default_str();
  verify_cmd->add_option("--trials", verify_args.trials, "Trials per check")->capture_default_str();
  verify_cmd->add_option("--epsilon", verify_args.epsilon)->capture_default_str();
  verify_cmd->add_option("--only", verify_args.only, "Comma-separated check names")->delimiter(',');
  verify_cmd->add_option("--out", verify_args.out, "Directory for per-check JSON reports");
  verify_cmd->add_option("--format", verify_args.format, "table|json")->check(CLI::IsMember({"table", "json"}));
  verify_cmd->add_option("--restarts", verify_args.restarts)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--tol", verify_args.solver_tol, "Per-solve tolerance")->check(CLI::PositiveNumber);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Write a named state or a random LOCC channel");
  gen_cmd->add_option("name", gen_args.name, "bell|ghz|w|werner|isotropic|mixed|random|channel")->required();
  gen_cmd->add_option("--w", gen_args.w, "Werner weight")->capture_default_str();
  gen_cmd->add_option("--f", gen_args.f, "Isotropic fidelity")->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed)->capture_default_str();
  gen_cmd->add_option("--rank", gen_args.rank, "Rank of random states (default full)");
  gen_cmd->add_option("--dims", gen_args.dims, "Local dimensions, e.g. 2,2")->delimiter(',');
  gen_cmd->add_option("--qubits", gen_args.qubits, "GHZ size")->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out, "Output path (stdout when absent)");

  std::vector<std::string> storage{"epsent"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*compute_cmd) return compute(compute_args, out);
    if (*sweep_cmd) return sweep(sweep_args, out);
    if (*verify_cmd) return verify(verify_args, out);
    return gen(gen_args, out);
  } catch (const InvariantError& e) {
    err << "error: invalid input (" << e.invariant() << "): " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace epsent::cli
