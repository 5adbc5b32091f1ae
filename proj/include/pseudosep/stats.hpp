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

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pseudosep/protocol.hpp"
#include "pseudosep/random.hpp"

namespace pseudosep {

enum class InputKind { Zero, Plus, Random };

std::string_view to_string(InputKind kind);
/// "zero", "plus", "random"; throws std::invalid_argument otherwise.
InputKind input_kind_from_name(std::string_view name);

/// Input register for a gate of `arity` on labels 0..arity-1.
QuantumState make_input(InputKind kind, int arity, RandomStream& rng);

struct RunSummary {
  int trials = 0;
  bool succeeded = false;
  /// Fidelity of the output with direct gate application; NaN on failure.
  double fidelity = 0.0;
};

struct TrialStatistics {
  std::size_t runs = 0;
  std::size_t failures = 0;
  /// Over successful runs.
  double mean_trials = 0.0;
  double std_error = 0.0;
  double first_trial_success_rate = 0.0;
  double min_fidelity = 1.0;
  /// histogram[n] = number of successful runs that took n trials; index 0
  /// is unused.
  std::vector<std::size_t> histogram;
  std::vector<RunSummary> per_run;

  /// Fraction of all runs that had not succeeded after `n` trials.
  double failure_rate_after(int n) const;
};

/// `runs` independent protocol executions of `gate`. Run i draws from
/// master.derive(i), so results do not depend on `workers`.
TrialStatistics collect_statistics(const GateSpec& gate, std::size_t runs,
                                   const ProtocolConfig& cfg, const RandomStream& master,
                                   InputKind input = InputKind::Random, unsigned workers = 0);

}  // namespace pseudosep
