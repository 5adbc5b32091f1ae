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

#include "pseudosep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace pseudosep {

std::string_view to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Zero:
      return "zero";
    case InputKind::Plus:
      return "plus";
    case InputKind::Random:
      return "random";
  }
  return "random";
}

InputKind input_kind_from_name(std::string_view name) {
  if (name == "zero") return InputKind::Zero;
  if (name == "plus") return InputKind::Plus;
  if (name == "random") return InputKind::Random;
  throw std::invalid_argument("unknown input state '" + std::string(name) + "'");
}

QuantumState make_input(InputKind kind, int arity, RandomStream& rng) {
  Labels labels;
  for (int q = 0; q < arity; ++q) labels.push_back(q);
  const int dim = 1 << arity;
  switch (kind) {
    case InputKind::Zero:
      return QuantumState::zero(labels);
    case InputKind::Plus:
      return QuantumState::pure(Vector::Constant(dim, 1.0 / std::sqrt(double(dim))), labels);
    case InputKind::Random:
      break;
  }
  return QuantumState::pure(haar_vector(dim, rng), labels);
}

double TrialStatistics::failure_rate_after(int n) const {
  if (runs == 0) return 0.0;
  std::size_t still_failing = failures;
  for (std::size_t k = static_cast<std::size_t>(std::max(n, 0)) + 1; k < histogram.size(); ++k) {
    still_failing += histogram[k];
  }
  return double(still_failing) / double(runs);
}

namespace {

RunSummary one_run(const GateSpec& gate, const ProtocolConfig& cfg, RandomStream rng,
                   InputKind input) {
  const int arity = gate.arity();
  const QuantumState in = make_input(input, arity, rng);
  const Labels qubits = in.labels();
  const ProtocolResult r = simulate_gate(gate, in, qubits, cfg, rng);
  RunSummary s;
  s.trials = static_cast<int>(r.trace.total_trials());
  s.succeeded = r.trace.succeeded;
  s.fidelity = std::numeric_limits<double>::quiet_NaN();
  if (s.succeeded) {
    const QuantumState expected = in.apply(gate.matrix(), qubits);
    s.fidelity = fidelity_up_to_phase(r.output, expected);
  }
  return s;
}

}  // namespace

TrialStatistics collect_statistics(const GateSpec& gate, std::size_t runs,
                                   const ProtocolConfig& cfg, const RandomStream& master,
                                   InputKind input, unsigned workers) {
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  cfg.validate();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));

  TrialStatistics st;
  st.runs = runs;
  st.per_run.resize(runs);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < runs; i += workers) {
      st.per_run[i] = one_run(gate, cfg, master.derive(i), input);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  // Merge in run order so floating-point sums do not depend on scheduling.
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t ok = 0;
  std::size_t first = 0;
  st.histogram.assign(1, 0);
  for (const RunSummary& s : st.per_run) {
    if (!s.succeeded) {
      ++st.failures;
      continue;
    }
    ++ok;
    sum += s.trials;
    sum_sq += double(s.trials) * s.trials;
    first += s.trials == 1 ? 1 : 0;
    if (st.histogram.size() <= static_cast<std::size_t>(s.trials)) st.histogram.resize(s.trials + 1, 0);
    ++st.histogram[s.trials];
    st.min_fidelity = std::min(st.min_fidelity, s.fidelity);
  }
  st.first_trial_success_rate = double(first) / double(runs);
  if (ok > 0) {
    st.mean_trials = sum / double(ok);
    if (ok > 1) {
      const double var = (sum_sq - double(ok) * st.mean_trials * st.mean_trials) / double(ok - 1);
      st.std_error = std::sqrt(std::max(var, 0.0) / double(ok));
    }
  }
  return st;
}

}  // namespace pseudosep
