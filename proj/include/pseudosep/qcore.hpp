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

#include "pseudosep/pauli.hpp"
#include "pseudosep/random.hpp"
#include "pseudosep/types.hpp"

namespace pseudosep {

enum class StateKind { Pure, Mixed };

/// A pure state vector or density matrix on at most kMaxQubits labeled
/// qubits. Constructors validate normalization (pure) or Hermiticity,
/// unit trace and positivity (mixed) at kStructuralTol.
class QuantumState {
 public:
  static QuantumState pure(Vector amplitudes, Labels labels);
  static QuantumState mixed(Matrix rho, Labels labels);
  /// |0...0> on the given labels.
  static QuantumState zero(Labels labels);
  /// Computational basis state from a string of '0'/'1', first character on
  /// the first label.
  static QuantumState from_bits(std::string_view bits, Labels labels);

  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::Pure; }
  const Labels& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  Eigen::Index dim() const { return Eigen::Index{1} << labels_.size(); }
  bool has_label(QubitId q) const;
  /// Position of q in the label order; throws std::invalid_argument.
  std::size_t position(QubitId q) const;

  /// Throws std::logic_error for mixed states.
  const Vector& amplitudes() const;
  Matrix density() const;

  /// Product state; label sets must be disjoint.
  QuantumState tensor(const QuantumState& rhs) const;
  /// Same state with the label list permuted into `order`.
  QuantumState reordered(const Labels& order) const;
  QuantumState relabeled(QubitId from, QubitId to) const;
  /// Same data under a new label list of equal length.
  QuantumState with_labels(Labels labels) const;
  /// op acting on the qubits `on` (in that order), identity elsewhere.
  QuantumState apply(const Matrix& op, const Labels& on) const;
  /// Partial trace over `discard`. Stays pure when the discarded qubits are
  /// in a product state with the rest.
  QuantumState trace_out(const Labels& discard) const;

 private:
  QuantumState(StateKind kind, Vector psi, Matrix rho, Labels labels);

  StateKind kind_;
  Vector psi_;
  Matrix rho_;
  Labels labels_;
};

/// An orthogonal projector on the qubits `support`, validated idempotent and
/// Hermitian at kStructuralTol.
struct Projector {
  Matrix matrix;
  Labels support;

  static Projector make(Matrix matrix, Labels support);
};

/// A complete projective measurement: mutually annihilating projectors on a
/// common support that sum to the identity.
class Instrument {
 public:
  /// Throws std::invalid_argument if the projectors are not a complete,
  /// mutually annihilating family.
  Instrument(std::vector<Matrix> projectors, Labels support);
  explicit Instrument(const std::vector<Projector>& projectors);

  const std::vector<Matrix>& projectors() const { return projectors_; }
  const Labels& support() const { return support_; }
  std::size_t size() const { return projectors_.size(); }

 private:
  std::vector<Matrix> projectors_;
  Labels support_;
};

struct MeasurementOutcome {
  int outcome;
  QuantumState post;
  double probability;
};

/// tr(P_i rho) for each outcome.
std::vector<double> outcome_probabilities(const QuantumState& state, const Instrument& instrument);

/// Samples outcome i with probability tr(P_i rho) and collapses to
/// P_i rho P_i / p_i. Throws std::runtime_error when every outcome has
/// numerically zero probability.
MeasurementOutcome measure(const QuantumState& state, const Instrument& instrument,
                           RandomStream& rng);

/// (|00> + |11>)/sqrt(2).
QuantumState epr_state(Labels labels = {0, 1});
/// (I (x) sigma_i)|EPR>.
QuantumState bell_state(Pauli i, Labels labels = {0, 1});
/// |B_i><B_i| as a 4x4 matrix.
Matrix bell_projector(Pauli i);

/// Dense operator on `system` acting as op on `on` and as the identity
/// elsewhere. Throws std::invalid_argument on unknown or duplicate labels or
/// a dimension mismatch.
Matrix embed(const Matrix& op, const Labels& on, const Labels& system);

/// |<a|b>|^2 for pure states, <a|rho|a> for pure/mixed, Uhlmann fidelity for
/// two mixed states. Invariant under global phase. Labels must agree as
/// sets; b is reordered to a's order.
double fidelity_up_to_phase(const QuantumState& a, const QuantumState& b);

/// Haar-random pure state on `labels`.
QuantumState random_state(Labels labels, RandomStream& rng);

}  // namespace pseudosep
