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

#include "pseudosep/types.hpp"

namespace pseudosep {

/// One-qubit Pauli operator by index: 0 = I, 1 = sigma_x, 2 = sigma_y,
/// 3 = sigma_z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr Pauli kAllPaulis[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

constexpr int index_of(Pauli p) { return static_cast<int>(p); }

/// Throws std::out_of_range unless 0 <= i <= 3.
Pauli pauli_from_index(int i);

char pauli_char(Pauli p);

/// A fourth root of unity, i^power.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase from_power(int k) { return Phase(((k % 4) + 4) % 4); }

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int power() const { return power_; }
  Complex value() const;
  constexpr Phase operator*(Phase o) const { return from_power(power_ + o.power_); }
  constexpr Phase conj() const { return from_power(-power_); }
  constexpr bool operator==(const Phase&) const = default;

  /// "+1", "-1", "+i", "-i".
  std::string str() const;

  /// The fourth root of unity within `tol` of c, if any.
  static std::optional<Phase> nearest(Complex c, double tol);

 private:
  constexpr explicit Phase(int power) : power_(power) {}
  int power_ = 0;
};

/// sigma_a sigma_b = phase * sigma_result.
struct PauliProduct {
  Phase phase;
  Pauli result;
  bool operator==(const PauliProduct&) const = default;
};

PauliProduct pauli_product(Pauli a, Pauli b);

/// The 2x2 matrix of a single Pauli.
const Matrix& pauli_matrix(Pauli p);

/// A Pauli string on n qubits times a phase in {+1, -1, +i, -i}. Index k
/// of the string acts on the k-th qubit of the label order.
class PhasedPauli {
 public:
  PhasedPauli(Phase phase, std::vector<Pauli> ops);
  explicit PhasedPauli(std::vector<Pauli> ops) : PhasedPauli(Phase::one(), std::move(ops)) {}

  static PhasedPauli identity(std::size_t num_qubits);
  /// Parses strings like "XZ", "-YY", "+iIZ", "-iX". Letters I, X, Y, Z only.
  static PhasedPauli parse(std::string_view text);

  Phase phase() const { return phase_; }
  const std::vector<Pauli>& ops() const { return ops_; }
  Pauli op(std::size_t q) const { return ops_.at(q); }
  std::size_t num_qubits() const { return ops_.size(); }

  /// phase * (sigma_{ops[0]} (x) sigma_{ops[1]} (x) ...).
  Matrix matrix() const;

  PhasedPauli operator*(const PhasedPauli& rhs) const;
  PhasedPauli operator-() const;
  PhasedPauli tensor(const PhasedPauli& rhs) const;
  PhasedPauli times(Phase p) const { return PhasedPauli(phase_ * p, ops_); }

  bool commutes_with(const PhasedPauli& rhs) const;
  bool is_identity_up_to_phase() const;

  bool operator==(const PhasedPauli&) const = default;

  std::string str() const;

 private:
  Phase phase_;
  std::vector<Pauli> ops_;
};

/// Dense realization of a phased Pauli; throws on an empty string.
Matrix pauli_matrix(const PhasedPauli& p);

/// Canonicalizes a dense 2^n x 2^n operator as a phased Pauli when it lies
/// within `tol` (max-entry norm) of one.
std::optional<PhasedPauli> as_phased_pauli(const Matrix& m, double tol = kPauliSnapTol);

/// gate * input * gate^dagger, with the Pauli form attached when it exists.
struct ConjugationEntry {
  std::string gate;
  PhasedPauli input;
  Matrix output;
  std::optional<PhasedPauli> pauli;

  bool is_pauli() const { return pauli.has_value(); }
};

/// Throws std::invalid_argument when the gate is not 2^n x 2^n for the
/// n qubits of `p`.
ConjugationEntry conjugate(const Matrix& gate, const PhasedPauli& p,
                           std::string gate_name = "U");

/// CNOT (sigma_control (x) sigma_target) CNOT = phase (sigma_c' (x) sigma_t').
struct CnotFrame {
  Phase phase;
  Pauli control;
  Pauli target;
  bool operator==(const CnotFrame&) const = default;
};

CnotFrame cnot_frame_update(Pauli control, Pauli target);

/// Standard gates. T is e^{-i pi sigma_z / 8}; CNOT has the first qubit as
/// control.
Matrix hadamard_matrix();
Matrix t_matrix();
Matrix cnot_matrix();

}  // namespace pseudosep
