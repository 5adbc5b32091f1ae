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

#include "pseudosep/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace pseudosep {

GateSpec::GateSpec(GateKind kind, Matrix matrix, std::string name)
    : kind_(kind), matrix_(std::move(matrix)), name_(std::move(name)) {}

GateSpec GateSpec::h() { return GateSpec(GateKind::H, hadamard_matrix(), "H"); }
GateSpec GateSpec::t() { return GateSpec(GateKind::T, t_matrix(), "T"); }
GateSpec GateSpec::cnot() { return GateSpec(GateKind::CNOT, cnot_matrix(), "CNOT"); }

GateSpec GateSpec::pauli(Pauli p) {
  switch (p) {
    case Pauli::X: return GateSpec(GateKind::PauliX, pauli_matrix(p), "X");
    case Pauli::Y: return GateSpec(GateKind::PauliY, pauli_matrix(p), "Y");
    case Pauli::Z: return GateSpec(GateKind::PauliZ, pauli_matrix(p), "Z");
    default: return custom(pauli_matrix(p), "I");
  }
}

GateSpec GateSpec::custom(Matrix u, std::string name) {
  if ((u.rows() != 2 && u.rows() != 4) || !is_unitary(u)) {
    throw std::invalid_argument("custom gate must be a 2x2 or 4x4 unitary");
  }
  return GateSpec(GateKind::Custom, std::move(u), std::move(name));
}

GateSpec GateSpec::from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "H") return h();
  if (upper == "T") return t();
  if (upper == "X") return pauli(Pauli::X);
  if (upper == "Y") return pauli(Pauli::Y);
  if (upper == "Z") return pauli(Pauli::Z);
  if (upper == "CNOT") return cnot();
  throw std::invalid_argument("unknown gate: " + std::string(name));
}

std::string_view to_string(PrepMode mode) {
  return mode == PrepMode::Measured ? "measured" : "direct";
}

void ProtocolConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (max_trials && *max_trials < 1) {
    throw std::invalid_argument("max_trials must be positive");
  }
}

int ProtocolConfig::trial_budget(int arity) const {
  validate();
  return max_trials ? *max_trials : trials_needed(epsilon, arity);
}

int trials_needed(double epsilon, int arity) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("trials_needed: epsilon must lie in (0, 1)");
  }
  if (arity != 1 && arity != 2) {
    throw std::invalid_argument("trials_needed: arity must be 1 or 2");
  }
  const double fail = arity == 1 ? 0.75 : 15.0 / 16.0;
  int n = std::max(1, static_cast<int>(std::ceil(std::log(epsilon) / std::log(fail))));
  // Guard the boundary against rounding in the logarithms.
  while (std::pow(fail, n) > epsilon) {
    ++n;
  }
  while (n > 1 && std::pow(fail, n - 1) <= epsilon) {
    --n;
  }
  return n;
}

PendingGate PendingGate::from(Matrix target) {
  auto pauli = as_phased_pauli(target);
  if (pauli) {
    return PendingGate{pauli->matrix(), std::move(pauli)};
  }
  // Nested conjugation roughly doubles rounding error per trial; the polar
  // factor puts the target back on the unitary group.
  Eigen::JacobiSVD<Matrix> svd(target, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return PendingGate{svd.matrixU() * svd.matrixV().adjoint(), std::nullopt};
}

BellVariant BellVariant::for_pauli(Pauli p) {
  return BellVariant{p == Pauli::Y || p == Pauli::Z, p == Pauli::X || p == Pauli::Y};
}

std::pair<BinaryMeasurement, BinaryMeasurement> bell_binaries(QubitId a, QubitId b,
                                                              BellVariant variant) {
  const auto x = SingleQubitBinary::X();
  const auto z = SingleQubitBinary::Z();
  const auto parity = BalancedBooleanFn::parity(2);
  return {expand_f_separate(
              PseudoseparateForm(parity, {x, variant.negate_x ? x.swapped() : x}, {a, b})),
          expand_f_separate(
              PseudoseparateForm(parity, {z, variant.negate_z ? z.swapped() : z}, {a, b}))};
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

// Runs binary measurements in sequence, appending each outcome bit.
QuantumState run_binaries(QuantumState state, const std::vector<const BinaryMeasurement*>& ms,
                          RandomStream& rng, std::vector<int>& bits) {
  for (const BinaryMeasurement* m : ms) {
    MeasurementOutcome o = measure(state, m->instrument(), rng);
    bits.push_back(o.outcome);
    state = std::move(o.post);
  }
  return state;
}

bool proportional_to(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    return false;
  }
  const double overlap = std::abs((b.adjoint() * a).trace()) / static_cast<double>(a.rows());
  return std::abs(overlap - 1.0) < kStructuralTol;
}

}  // namespace

BellOutcome bell_measure(const QuantumState& state, QubitId a, QubitId b, BellVariant variant,
                         RandomStream& rng) {
  if (a == b) {
    throw std::invalid_argument("bell_measure: qubits must be distinct");
  }
  state.position(a);
  state.position(b);
  const auto [xm, zm] = bell_binaries(a, b, variant);
  std::vector<int> bits;
  QuantumState post = run_binaries(state, {&xm, &zm}, rng, bits);
  return BellOutcome{pair_index_from_bits(bits[0], bits[1]), std::move(post), {bits[0], bits[1]}};
}

AncillaPrep prepare_ancilla_one(const Matrix& u, PrepMode mode, RandomStream& rng, Labels labels,
                                std::optional<Pauli> forced) {
  if (u.rows() != 2 || !is_unitary(u)) {
    throw std::invalid_argument("prepare_ancilla_one: u must be a 2x2 unitary");
  }
  if (labels.size() != 2) {
    throw std::invalid_argument("prepare_ancilla_one: needs two labels");
  }
  const auto pauli = as_phased_pauli(u);
  if (mode == PrepMode::Direct) {
    const Pauli j = forced ? *forced : pauli_from_index(static_cast<int>(rng.uniform_index(4)));
    Vector v = u_basis_vector(u, j);
    v /= v.norm();
    return AncillaPrep{QuantumState::pure(std::move(v), labels), {j}, {}, {}, pauli.has_value()};
  }
  const QuantumState start = QuantumState::zero(labels);
  const auto [xm, zm] = pauli ? bell_binaries(labels[0], labels[1],
                                              BellVariant::for_pauli(pauli->op(0)))
                              : u_basis_binary_pair(u, labels);
  std::vector<int> bits;
  QuantumState state = run_binaries(start, {&xm, &zm}, rng, bits);
  return AncillaPrep{std::move(state),
                     {pair_index_from_bits(bits[0], bits[1])},
                     bits,
                     {xm.describe(), zm.describe()},
                     pauli.has_value()};
}

AncillaPrep prepare_ancilla_two(const Matrix& u, PrepMode mode, RandomStream& rng, Labels labels,
                                std::optional<std::pair<Pauli, Pauli>> forced) {
  if (u.rows() != 4 || !is_unitary(u)) {
    throw std::invalid_argument("prepare_ancilla_two: u must be a 4x4 unitary");
  }
  if (labels.size() != 4) {
    throw std::invalid_argument("prepare_ancilla_two: needs four labels");
  }
  const auto pauli = as_phased_pauli(u);
  if (mode == PrepMode::Direct) {
    Pauli j, k;
    if (forced) {
      std::tie(j, k) = *forced;
    } else {
      j = pauli_from_index(static_cast<int>(rng.uniform_index(4)));
      k = pauli_from_index(static_cast<int>(rng.uniform_index(4)));
    }
    Vector v = u_pair_basis_vector(u, j, k);
    v /= v.norm();
    return AncillaPrep{QuantumState::pure(std::move(v), labels), {j, k}, {}, {}, pauli.has_value()};
  }

  AncillaPrep prep{QuantumState::zero(labels), {}, {}, {}, pauli.has_value()};
  if (pauli) {
    // Tensor product of Paulis: independent Bell variants on (1,3) and (2,4).
    const auto [xa, za] =
        bell_binaries(labels[0], labels[2], BellVariant::for_pauli(pauli->op(0)));
    const auto [xb, zb] =
        bell_binaries(labels[1], labels[3], BellVariant::for_pauli(pauli->op(1)));
    prep.state = run_binaries(prep.state, {&xa, &za, &xb, &zb}, rng, prep.bits);
    prep.recipe = {xa.describe(), za.describe(), xb.describe(), zb.describe()};
  } else {
    const Labels canonical = {1, 2, 3, 4};
    const std::array<BinaryMeasurement, 4> set =
        proportional_to(u, cnot_matrix()) ? cnot_measurement_set() : u_pair_basis_binaries(u);
    QuantumState state = QuantumState::zero(canonical);
    state = run_binaries(state, {&set[0], &set[1], &set[2], &set[3]}, rng, prep.bits);
    prep.state = state.with_labels(labels);
    for (const auto& m : set) {
      prep.recipe.push_back(m.describe());
    }
  }
  prep.index = {pair_index_from_bits(prep.bits[0], prep.bits[1]),
                pair_index_from_bits(prep.bits[2], prep.bits[3])};
  return prep;
}

namespace {

ProtocolResult run_protocol(const Matrix& gate, const QuantumState& input, const Labels& qubits,
                            const ProtocolConfig& cfg, RandomStream& rng) {
  const std::size_t arity = qubits.size();
  if (arity != 1 && arity != 2) {
    throw std::invalid_argument("protocol: gates act on one or two qubits");
  }
  if (gate.rows() != (Eigen::Index{1} << arity)) {
    throw std::invalid_argument("protocol: gate dimension does not match qubit count");
  }
  if (arity == 2 && qubits[0] == qubits[1]) {
    throw std::invalid_argument("protocol: qubits must be distinct");
  }
  for (QubitId q : qubits) {
    input.position(q);
  }
  if (input.num_qubits() + 2 * arity > kMaxQubits) {
    throw std::invalid_argument("protocol: live qubits would exceed " +
                                std::to_string(kMaxQubits));
  }
  const int budget = cfg.trial_budget(static_cast<int>(arity));

  QubitId next = *std::max_element(input.labels().begin(), input.labels().end()) + 1;
  Labels ancillas;
  for (std::size_t i = 0; i < 2 * arity; ++i) {
    ancillas.push_back(next++);
  }

  PendingGate pending = PendingGate::from(gate);
  QuantumState state = input;
  ProtocolTrace trace;
  for (int trial = 0; trial < budget; ++trial) {
    TrialRecord rec;
    rec.target = pending.describe();
    AncillaPrep prep = arity == 1 ? prepare_ancilla_one(pending.target, cfg.prep, rng, ancillas)
                                  : prepare_ancilla_two(pending.target, cfg.prep, rng, ancillas);
    QuantumState joint = state.tensor(prep.state);
    Labels consumed;
    for (std::size_t i = 0; i < arity; ++i) {
      BellOutcome b = bell_measure(joint, qubits[i], ancillas[i], {}, rng);
      joint = std::move(b.post);
      rec.measured.push_back(b.m);
      rec.bell_bits.insert(rec.bell_bits.end(), b.bits.begin(), b.bits.end());
      consumed.push_back(qubits[i]);
      consumed.push_back(ancillas[i]);
    }
    joint = joint.trace_out(consumed);
    for (std::size_t i = 0; i < arity; ++i) {
      joint = joint.relabeled(ancillas[arity + i], qubits[i]);
    }
    state = std::move(joint);

    rec.prepared = prep.index;
    rec.prep_bits = std::move(prep.bits);
    rec.prep_recipe = std::move(prep.recipe);
    rec.bell_only = prep.bell_only;
    rec.success = rec.prepared == rec.measured;
    trace.trials.push_back(std::move(rec));
    const TrialRecord& done = trace.trials.back();
    if (done.success) {
      trace.succeeded = true;
      break;
    }
    Matrix frame = pauli_matrix(done.measured[0]) * pauli_matrix(done.prepared[0]);
    for (std::size_t i = 1; i < arity; ++i) {
      frame = kron(frame, pauli_matrix(done.measured[i]) * pauli_matrix(done.prepared[i]));
    }
    pending = PendingGate::from(pending.target * frame * pending.target.adjoint());
  }
  const Eigen::Index dim = Eigen::Index{1} << arity;
  trace.residual = trace.succeeded ? PendingGate::from(Matrix::Identity(dim, dim)) : pending;
  return ProtocolResult{state.reordered(input.labels()), std::move(trace)};
}

}  // namespace

ProtocolResult simulate_one_qubit(const GateSpec& gate, const QuantumState& input, QubitId qubit,
                                  const ProtocolConfig& cfg, RandomStream& rng) {
  if (gate.arity() != 1) {
    throw std::invalid_argument("simulate_one_qubit: gate " + gate.name() + " is not one-qubit");
  }
  return run_protocol(gate.matrix(), input, {qubit}, cfg, rng);
}

ProtocolResult simulate_cnot(const QuantumState& input, QubitId control, QubitId target,
                             const ProtocolConfig& cfg, RandomStream& rng) {
  return run_protocol(cnot_matrix(), input, {control, target}, cfg, rng);
}

ProtocolResult simulate_gate(const GateSpec& gate, const QuantumState& input,
                             const Labels& qubits, const ProtocolConfig& cfg, RandomStream& rng) {
  if (qubits.size() != static_cast<std::size_t>(gate.arity())) {
    throw std::invalid_argument("simulate_gate: " + gate.name() + " needs " +
                                std::to_string(gate.arity()) + " qubit(s)");
  }
  return run_protocol(gate.matrix(), input, qubits, cfg, rng);
}

namespace {

Labels register_labels(std::size_t n) {
  if (n == 0 || n > kMaxLogicalQubits) {
    throw std::invalid_argument("circuit register must have 1.." +
                                std::to_string(kMaxLogicalQubits) + " qubits");
  }
  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<QubitId>(i);
  }
  return labels;
}

void check_op(const CircuitOp& op, std::size_t n) {
  if (op.qubits.size() != static_cast<std::size_t>(op.gate.arity())) {
    throw std::invalid_argument("circuit: " + op.gate.name() + " needs " +
                                std::to_string(op.gate.arity()) + " qubit(s)");
  }
  for (QubitId q : op.qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= n) {
      throw std::invalid_argument("circuit: qubit " + std::to_string(q) + " outside register");
    }
  }
  if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) {
    throw std::invalid_argument("circuit: two-qubit gate operands must differ");
  }
}

}  // namespace

CircuitResult run_circuit(const std::vector<CircuitOp>& circuit, std::size_t num_qubits,
                          const ProtocolConfig& cfg, RandomStream& rng) {
  const Labels labels = register_labels(num_qubits);
  for (const CircuitOp& op : circuit) {
    check_op(op, num_qubits);
  }
  QuantumState state = QuantumState::zero(labels);
  CircuitResult result{state, {}, labels, true};
  for (const CircuitOp& op : circuit) {
    ProtocolResult r = simulate_gate(op.gate, state, op.qubits, cfg, rng);
    state = std::move(r.output);
    const bool ok = r.trace.succeeded;
    result.traces.push_back(std::move(r.trace));
    if (!ok) {
      result.completed = false;
      break;
    }
  }
  result.final_state = state.reordered(labels);
  return result;
}

QuantumState simulate_directly(const std::vector<CircuitOp>& circuit, std::size_t num_qubits) {
  const Labels labels = register_labels(num_qubits);
  QuantumState state = QuantumState::zero(labels);
  for (const CircuitOp& op : circuit) {
    check_op(op, num_qubits);
    state = state.apply(op.gate.matrix(), op.qubits);
  }
  return state;
}

}  // namespace pseudosep
