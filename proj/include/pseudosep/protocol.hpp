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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudosep/measure.hpp"
#include "pseudosep/pauli.hpp"
#include "pseudosep/qcore.hpp"
#include "pseudosep/random.hpp"

namespace pseudosep {

enum class GateKind { H, T, PauliX, PauliY, PauliZ, CNOT, Custom };

/// A gate to be simulated by measurements alone.
class GateSpec {
 public:
  static GateSpec h();
  static GateSpec t();
  static GateSpec pauli(Pauli p);
  static GateSpec cnot();
  /// Arbitrary one- or two-qubit unitary; throws std::invalid_argument if
  /// the matrix is not a 2x2 or 4x4 unitary.
  static GateSpec custom(Matrix u, std::string name = "U");
  /// "H", "T", "X", "Y", "Z", "CNOT" (case-insensitive).
  static GateSpec from_name(std::string_view name);

  GateKind kind() const { return kind_; }
  const Matrix& matrix() const { return matrix_; }
  int arity() const { return matrix_.rows() == 2 ? 1 : 2; }
  const std::string& name() const { return name_; }

 private:
  GateSpec(GateKind kind, Matrix matrix, std::string name);
  GateKind kind_;
  Matrix matrix_;
  std::string name_;
};

enum class PrepMode { Measured, Direct };

std::string_view to_string(PrepMode mode);

struct ProtocolConfig {
  /// Failure budget; sets the trial cap when max_trials is unset.
  double epsilon = 1e-9;
  std::optional<int> max_trials;
  PrepMode prep = PrepMode::Measured;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for epsilon outside (0, 1) or a
  /// non-positive max_trials.
  void validate() const;
  int trial_budget(int arity) const;
};

/// Smallest N with (3/4)^N <= epsilon (arity 1) or (15/16)^N <= epsilon
/// (arity 2). Throws std::invalid_argument outside 0 < epsilon < 1.
int trials_needed(double epsilon, int arity);

/// The gate still owed on the next trial. After a failed trial with
/// prepared index j and Bell outcome m the owed gate becomes
/// U sigma_m sigma_j U^dagger (tensor analogue for two qubits).
struct PendingGate {
  Matrix target;
  /// Set when the target is a phased Pauli (a tensor product of them for
  /// two qubits); the matrix is then exactly pauli->matrix().
  std::optional<PhasedPauli> pauli;

  static PendingGate from(Matrix target);
  int arity() const { return target.rows() == 2 ? 1 : 2; }
  std::string describe() const { return pauli ? pauli->str() : "dense"; }
};

struct TrialRecord {
  std::vector<Pauli> prepared;
  std::vector<Pauli> measured;
  /// Classical bits of the preparation measurements (empty in direct mode).
  std::vector<int> prep_bits;
  std::vector<int> bell_bits;
  /// Owed gate at the start of this trial.
  std::string target;
  /// Pseudoseparate description of each preparation measurement.
  std::vector<std::string> prep_recipe;
  /// Preparation used only (possibly negated) Bell measurements.
  bool bell_only = false;
  bool success = false;
};

struct ProtocolTrace {
  std::vector<TrialRecord> trials;
  bool succeeded = false;
  /// Gate still owed on the output; the identity after success.
  PendingGate residual;

  std::size_t total_trials() const { return trials.size(); }
};

struct ProtocolResult {
  QuantumState output;
  ProtocolTrace trace;
};

/// Which sign flips turn the Bell measurement into the preparation
/// measurement for the Pauli u = sigma_p: negate_x when sigma_p anticommutes
/// with sigma_x, negate_z when it anticommutes with sigma_z.
struct BellVariant {
  bool negate_x = false;
  bool negate_z = false;
  static BellVariant for_pauli(Pauli p);
};

/// xor[(X0,X1),(X0,X1) or (X1,X0)] and xor[(Z0,Z1),(Z0,Z1) or (Z1,Z0)] on (a, b).
std::pair<BinaryMeasurement, BinaryMeasurement> bell_binaries(QubitId a, QubitId b,
                                                              BellVariant variant = {});

struct BellOutcome {
  /// For variant (0,0) the post-measurement pair is |B_m>.
  Pauli m;
  QuantumState post;
  std::array<int, 2> bits;
};

/// Bell measurement realized as two xor-separate binary measurements in
/// succession. Throws std::invalid_argument for unknown or equal labels.
BellOutcome bell_measure(const QuantumState& state, QubitId a, QubitId b, BellVariant variant,
                         RandomStream& rng);

struct AncillaPrep {
  QuantumState state;
  /// j (one-qubit gates) or (j, k).
  std::vector<Pauli> index;
  std::vector<int> bits;
  std::vector<std::string> recipe;
  bool bell_only = false;
};

/// Two ancillas in |U_j> = (I (x) u sigma_j)|EPR>. Measured mode starts from
/// |00> and applies the two binary measurements of u_basis_binary_pair (the
/// Bell variant when u is a phased Pauli); direct mode draws j uniformly, or
/// uses `forced`, and writes the vector.
AncillaPrep prepare_ancilla_one(const Matrix& u, PrepMode mode, RandomStream& rng,
                                Labels labels = {0, 1}, std::optional<Pauli> forced = {});

/// Four ancillas in |U_jk> (qubit order as in u_pair_basis_vector). Measured
/// mode starts from |0000>; C-NOT uses cnot_measurement_set, tensor products
/// of Paulis use two Bell variants, anything else uses u_pair_basis_binaries.
AncillaPrep prepare_ancilla_two(const Matrix& u, PrepMode mode, RandomStream& rng,
                                Labels labels = {1, 2, 3, 4},
                                std::optional<std::pair<Pauli, Pauli>> forced = {});

/// Repeat-until-success simulation of a one-qubit gate on `qubit` of
/// `input`. On success the output carries U|psi> on the same label, up to
/// global phase. When the trial budget runs out the trace reports
/// succeeded = false and the residual owed gate.
ProtocolResult simulate_one_qubit(const GateSpec& gate, const QuantumState& input, QubitId qubit,
                                  const ProtocolConfig& cfg, RandomStream& rng);

/// Same for C-NOT with `control`, `target`.
ProtocolResult simulate_cnot(const QuantumState& input, QubitId control, QubitId target,
                             const ProtocolConfig& cfg, RandomStream& rng);

/// Dispatches on arity; supports custom two-qubit gates.
ProtocolResult simulate_gate(const GateSpec& gate, const QuantumState& input,
                             const Labels& qubits, const ProtocolConfig& cfg, RandomStream& rng);

struct CircuitOp {
  GateSpec gate;
  Labels qubits;
};

struct CircuitResult {
  QuantumState final_state;
  std::vector<ProtocolTrace> traces;
  Labels register_labels;
  /// False when some gate exhausted its budget; traces end at that gate.
  bool completed = true;
};

inline constexpr std::size_t kMaxLogicalQubits = 4;

/// Measurement-only execution from |0...0> on logical qubits 0..n-1.
CircuitResult run_circuit(const std::vector<CircuitOp>& circuit, std::size_t num_qubits,
                          const ProtocolConfig& cfg, RandomStream& rng);

/// Reference unitary simulation of the same circuit.
QuantumState simulate_directly(const std::vector<CircuitOp>& circuit, std::size_t num_qubits);

}  // namespace pseudosep
