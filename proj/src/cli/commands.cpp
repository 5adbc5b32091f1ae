// Copyright 2026 The pseudosep Authors
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

#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pseudosep/circuit.hpp"
#include "pseudosep/cli.hpp"

namespace pseudosep::cli {

using nlohmann::json;

namespace {

// Thrown for bad flags or inputs after CLI11 has accepted the syntax.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json paulis_json(const std::vector<Pauli>& ps) {
  json a = json::array();
  for (Pauli p : ps) a.push_back(std::string(1, pauli_char(p)));
  return a;
}

json config_json(const ProtocolConfig& cfg) {
  json c;
  c["seed"] = cfg.seed;
  c["epsilon"] = cfg.epsilon;
  c["max_trials"] = cfg.max_trials ? json(*cfg.max_trials) : json(nullptr);
  c["prep"] = std::string(to_string(cfg.prep));
  return c;
}

json header(const char* command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

json trace_json(const ProtocolTrace& trace) {
  json trials = json::array();
  for (std::size_t i = 0; i < trace.trials.size(); ++i) {
    const TrialRecord& t = trace.trials[i];
    trials.push_back({{"trial", i + 1},
                      {"target", t.target},
                      {"prepared", paulis_json(t.prepared)},
                      {"measured", paulis_json(t.measured)},
                      {"prep_bits", t.prep_bits},
                      {"bell_bits", t.bell_bits},
                      {"prep_recipe", t.prep_recipe},
                      {"bell_only", t.bell_only},
                      {"success", t.success}});
  }
  return trials;
}

std::string fidelity_text(double f) { return std::isnan(f) ? "n/a" : fmt::format("{:.15f}", f); }

GateSpec gate_from_name(const std::string& name) {
  try {
    return GateSpec::from_name(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void validate(const ProtocolConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CircuitParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int cmd_verify(const IdentitySuiteOptions& options, bool json_out, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    if (!(options.tolerance > 0.0)) throw UsageError("tolerance must be positive");
    const IdentityReport report = run_identity_suite(options);
    if (json_out) {
      json j = header("verify");
      j["config"] = {{"tolerance", options.tolerance}};
      j["passed"] = report.all_passed();
      j["passed_count"] = report.passed_count();
      j["total"] = report.checks.size();
      json checks = json::array();
      for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"max_deviation", c.max_deviation}, {"passed", c.passed}});
      }
      j["checks"] = checks;
      out << j.dump(2) << '\n';
    } else {
      for (const auto& c : report.checks) {
        out << fmt::format("{:<4} {:<36} {:.3e}\n", c.passed ? "ok" : "FAIL", c.name,
                           c.max_deviation);
      }
      out << fmt::format("{}/{} identities hold at tolerance {:.1e}; cnot.conj {}/16\n",
                         report.passed_count(), report.checks.size(), options.tolerance,
                         report.count_with_prefix("cnot.conj", true));
    }
    for (const auto& c : report.checks) {
      if (!c.passed) err << "identity failed: " << c.name << '\n';
    }
    return report.all_passed() ? kOk : kFailure;
  });
}

int cmd_simulate(const std::string& gate_name, InputKind state, const ProtocolConfig& cfg,
                 bool json_out, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GateSpec gate = gate_from_name(gate_name);
    validate(cfg);
    RandomStream rng(cfg.seed);
    RandomStream input_rng = rng.derive(0);
    RandomStream protocol_rng = rng.derive(1);
    const QuantumState in = make_input(state, gate.arity(), input_rng);
    const ProtocolResult r = simulate_gate(gate, in, in.labels(), cfg, protocol_rng);
    double fidelity = std::nan("");
    if (r.trace.succeeded) {
      fidelity = fidelity_up_to_phase(r.output, in.apply(gate.matrix(), in.labels()));
    }
    const bool ok = r.trace.succeeded && fidelity >= kFidelityFloor;
    if (json_out) {
      json j = header("simulate");
      json c = config_json(cfg);
      c["gate"] = gate.name();
      c["state"] = std::string(to_string(state));
      j["config"] = c;
      j["succeeded"] = r.trace.succeeded;
      j["trials"] = r.trace.total_trials();
      j["trial_budget"] = cfg.trial_budget(gate.arity());
      j["fidelity"] = std::isnan(fidelity) ? json(nullptr) : json(fidelity);
      j["residual"] = r.trace.residual.describe();
      j["trace"] = trace_json(r.trace);
      out << j.dump(2) << '\n';
    } else {
      out << fmt::format("gate {} on {} input, seed {}, prep {}\n", gate.name(), to_string(state),
                         cfg.seed, to_string(cfg.prep));
      for (std::size_t i = 0; i < r.trace.trials.size(); ++i) {
        const TrialRecord& t = r.trace.trials[i];
        std::string prepared, measured;
        for (Pauli p : t.prepared) prepared += pauli_char(p);
        for (Pauli p : t.measured) measured += pauli_char(p);
        out << fmt::format("  trial {:>3}: owe {:<6} prepared {:<2} measured {:<2} {}\n", i + 1,
                           t.target, prepared, measured, t.success ? "success" : "retry");
      }
      out << fmt::format("{} after {} trial(s); residual {}; fidelity {}\n",
                         r.trace.succeeded ? "succeeded" : "FAILED", r.trace.total_trials(),
                         r.trace.residual.describe(), fidelity_text(fidelity));
    }
    if (!r.trace.succeeded) err << "trial budget exhausted; residual " << r.trace.residual.describe() << '\n';
    return ok ? kOk : kFailure;
  });
}

int cmd_stats(const std::string& gate_name, std::size_t runs, InputKind state,
              const ProtocolConfig& cfg, unsigned workers, bool json_out, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const GateSpec gate = gate_from_name(gate_name);
    validate(cfg);
    if (runs < 1) throw UsageError("--trials must be at least 1");
    const TrialStatistics st = collect_statistics(gate, runs, cfg, RandomStream(cfg.seed), state, workers);
    if (json_out) {
      json j = header("stats");
      json c = config_json(cfg);
      c["gate"] = gate.name();
      c["state"] = std::string(to_string(state));
      c["trials"] = runs;
      j["config"] = c;
      j["runs"] = st.runs;
      j["failures"] = st.failures;
      j["mean_trials"] = st.mean_trials;
      j["std_error"] = st.std_error;
      j["first_trial_success_rate"] = st.first_trial_success_rate;
      j["min_fidelity"] = st.min_fidelity;
      json hist = json::array();
      for (std::size_t k = 1; k < st.histogram.size(); ++k) {
        if (st.histogram[k] > 0) hist.push_back({{"trials", k}, {"count", st.histogram[k]}});
      }
      j["histogram"] = hist;
      out << j.dump(2) << '\n';
    } else {
      out << fmt::format("gate {}: {} runs, {} failed\n", gate.name(), st.runs, st.failures);
      out << fmt::format("mean trials {:.6f} +- {:.6f}\n", st.mean_trials, st.std_error);
      out << fmt::format("first-trial success rate {:.6f}\n", st.first_trial_success_rate);
      out << fmt::format("min fidelity {:.15f}\n", st.min_fidelity);
      for (std::size_t k = 1; k < st.histogram.size(); ++k) {
        if (st.histogram[k] > 0) out << fmt::format("  {:>3} {}\n", k, st.histogram[k]);
      }
    }
    return st.failures == 0 && st.min_fidelity >= kFidelityFloor ? kOk : kFailure;
  });
}

int cmd_run(const std::string& path, const ProtocolConfig& cfg, bool json_out, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    ParsedCircuit circuit;
    try {
      circuit = load_circuit_file(path);
    } catch (const CircuitParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    RandomStream rng(cfg.seed);
    const CircuitResult r = run_circuit(circuit.ops, circuit.num_qubits, cfg, rng);
    double fidelity = std::nan("");
    if (r.completed) {
      fidelity = fidelity_up_to_phase(r.final_state, simulate_directly(circuit.ops, circuit.num_qubits));
    }
    const double floor = 1.0 - 1e-10 * std::max<double>(1.0, double(circuit.ops.size()));
    const bool ok = r.completed && fidelity >= floor;

    auto qubits_text = [](const Labels& qs) {
      std::string s;
      for (QubitId q : qs) s += (s.empty() ? "" : " ") + std::to_string(q);
      return s;
    };
    if (json_out) {
      json j = header("run");
      json c = config_json(cfg);
      c["circuit"] = path;
      j["config"] = c;
      j["num_qubits"] = circuit.num_qubits;
      j["gate_count"] = circuit.ops.size();
      j["completed"] = r.completed;
      j["fidelity"] = std::isnan(fidelity) ? json(nullptr) : json(fidelity);
      json gates = json::array();
      for (std::size_t i = 0; i < r.traces.size(); ++i) {
        const CircuitOp& op = circuit.ops[i];
        gates.push_back({{"index", i},
                         {"gate", op.gate.name()},
                         {"qubits", op.qubits},
                         {"trials", r.traces[i].total_trials()},
                         {"succeeded", r.traces[i].succeeded},
                         {"residual", r.traces[i].residual.describe()}});
      }
      j["gates"] = gates;
      out << j.dump(2) << '\n';
    } else {
      out << fmt::format("{} gate(s) on {} qubit(s), seed {}\n", circuit.ops.size(),
                         circuit.num_qubits, cfg.seed);
      for (std::size_t i = 0; i < r.traces.size(); ++i) {
        const CircuitOp& op = circuit.ops[i];
        out << fmt::format("  {:>3} {:<4} {:<4} trials {:>3} {}\n", i, op.gate.name(),
                           qubits_text(op.qubits), r.traces[i].total_trials(),
                           r.traces[i].succeeded ? "ok" : "FAILED residual " + r.traces[i].residual.describe());
      }
      out << fmt::format("{}; fidelity vs direct simulation {}\n",
                         r.completed ? "completed" : "aborted", fidelity_text(fidelity));
    }
    if (!r.completed) err << "circuit aborted: gate budget exhausted\n";
    return ok ? kOk : kFailure;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-only quantum computation: identity checks, protocol runs, statistics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  double epsilon = 1e-9;
  std::optional<int> max_trials;
  std::string prep = "measured";
  bool json_out = false;
  double tolerance = kIdentityTol;
  std::size_t runs = 10000;
  std::string state = "zero";
  unsigned workers = 0;
  std::string gate;
  std::string path;

  app.add_option("--seed", seed, "Master seed");
  app.add_option("--epsilon", epsilon, "Failure budget per gate");
  app.add_option("--max-trials", max_trials, "Hard trial cap per gate (overrides --epsilon)");
  app.add_option("--prep", prep, "Ancilla preparation")->check(CLI::IsMember({"measured", "direct"}));
  app.add_flag("--json", json_out, "Machine-readable output");

  auto* verify = app.add_subcommand("verify", "Check every exact identity");
  verify->add_option("--tolerance", tolerance, "Maximum entry deviation");

  auto* simulate = app.add_subcommand("simulate", "One protocol run of a gate");
  simulate->add_option("gate", gate, "H, T, X, Y, Z or CNOT")->required();
  simulate->add_option("--state", state, "Input state")->check(CLI::IsMember({"zero", "plus", "random"}));

  auto* stats = app.add_subcommand("stats", "Trial statistics over independent runs");
  stats->add_option("gate", gate, "H, T, X, Y, Z or CNOT")->required();
  stats->add_option("--trials", runs, "Number of runs");
  stats->add_option("--state", state, "Input state")->check(CLI::IsMember({"zero", "plus", "random"}));
  stats->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  auto* run = app.add_subcommand("run", "Execute a circuit file");
  run->add_option("path", path, "Circuit file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  ProtocolConfig cfg;
  cfg.seed = seed;
  cfg.epsilon = epsilon;
  cfg.max_trials = max_trials;
  cfg.prep = prep == "direct" ? PrepMode::Direct : PrepMode::Measured;

  if (verify->parsed()) {
    IdentitySuiteOptions options;
    options.tolerance = tolerance;
    return cmd_verify(options, json_out, out, err);
  }
  if (simulate->parsed()) {
    return cmd_simulate(gate, input_kind_from_name(state), cfg, json_out, out, err);
  }
  if (stats->parsed()) {
    // Statistics default to random inputs.
    const InputKind kind = stats->count("--state") ? input_kind_from_name(state) : InputKind::Random;
    return cmd_stats(gate, runs, kind, cfg, workers, json_out, out, err);
  }
  return cmd_run(path, cfg, json_out, out, err);
}

}  // namespace pseudosep::cli
