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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pseudosep/pauli.hpp"
#include "pseudosep/qcore.hpp"
#include "pseudosep/types.hpp"

namespace pseudosep {

/// Single-qubit binary measurement (P0, P1) with P0 = (I + a.sigma)/2 for a
/// unit Bloch vector a, and P1 = I - P0.
class SingleQubitBinary {
 public:
  /// Throws std::invalid_argument unless |bloch| = 1 within kStructuralTol.
  static SingleQubitBinary from_bloch(const Eigen::Vector3d& bloch);
  /// P0 = (I + A)/2 for a traceless Hermitian unitary A.
  static SingleQubitBinary from_observable(const Matrix& a);

  // The four measurements the universal catalogue is built from:
  // X0 = (I + sigma_x)/2, Y0 = (I + sigma_y)/2, Z0 = |0><0|, and
  // W0 = (I + (sigma_x + sigma_y)/sqrt(2))/2.
  static SingleQubitBinary X();
  static SingleQubitBinary Y();
  static SingleQubitBinary Z();
  static SingleQubitBinary W();

  const Eigen::Vector3d& bloch() const { return bloch_; }
  Matrix p0() const;
  Matrix p1() const;
  Matrix projector(int outcome) const { return outcome == 0 ? p0() : p1(); }
  /// (P1, P0).
  SingleQubitBinary swapped() const { return SingleQubitBinary(-bloch_); }

  /// Catalogue name such as "(X0,X1)" or "(Z1,Z0)"; "(custom)" otherwise.
  std::string name() const;

 private:
  explicit SingleQubitBinary(const Eigen::Vector3d& bloch) : bloch_(bloch) {}
  Eigen::Vector3d bloch_;
};

/// Boolean function on n bits with exactly 2^(n-1) ones. Input bit j1 is the
/// most significant bit of the table index.
class BalancedBooleanFn {
 public:
  /// Throws std::invalid_argument if the table has the wrong length or is
  /// not balanced.
  BalancedBooleanFn(int arity, std::vector<std::uint8_t> truth_table);
  static BalancedBooleanFn parity(int arity);

  int arity() const { return arity_; }
  int operator()(std::uint32_t bits) const { return table_.at(bits); }
  const std::vector<std::uint8_t>& table() const { return table_; }
  bool is_parity() const;

 private:
  int arity_;
  std::vector<std::uint8_t> table_;
};

/// f[(P0^(1), P1^(1)), ..., (P0^(n), P1^(n))] on the qubits `targets`.
struct PseudoseparateForm {
  BalancedBooleanFn f;
  std::vector<SingleQubitBinary> parts;
  Labels targets;

  /// Throws std::invalid_argument when the arity, part count and target
  /// count disagree or a target repeats.
  PseudoseparateForm(BalancedBooleanFn f, std::vector<SingleQubitBinary> parts, Labels targets);

  /// "xor[(X0,X1),(Z0,Z1)] on (1,3)".
  std::string describe() const;
};

/// Two-outcome projective measurement with tr P0 = tr P1 = 2^(n-1).
class BinaryMeasurement {
 public:
  /// Validates P0 P1 = 0, P0 + P1 = I and equal traces at kStructuralTol.
  BinaryMeasurement(Matrix p0, Matrix p1, Labels support,
                    std::optional<PseudoseparateForm> form = std::nullopt);

  const Matrix& p0() const { return instrument_.projectors()[0]; }
  const Matrix& p1() const { return instrument_.projectors()[1]; }
  const Matrix& projector(int outcome) const { return instrument_.projectors().at(outcome); }
  const Labels& support() const { return instrument_.support(); }
  std::size_t num_qubits() const { return support().size(); }
  const std::optional<PseudoseparateForm>& form() const { return form_; }
  const Instrument& instrument() const { return instrument_; }

  /// The same measurement written on a larger label set.
  BinaryMeasurement embedded(const Labels& system) const;

  std::string describe() const;

 private:
  Instrument instrument_;
  std::optional<PseudoseparateForm> form_;
};

/// Complete k-outcome projective measurement.
class CompleteMeasurement {
 public:
  CompleteMeasurement(std::vector<Matrix> projectors, Labels support)
      : instrument_(std::move(projectors), std::move(support)) {}

  const std::vector<Matrix>& projectors() const { return instrument_.projectors(); }
  const Labels& support() const { return instrument_.support(); }
  std::size_t size() const { return instrument_.size(); }
  const Instrument& instrument() const { return instrument_; }

 private:
  Instrument instrument_;
};

/// Raised by compose_binaries when two inputs fail to commute.
class NonCommutingError : public std::invalid_argument {
 public:
  NonCommutingError(std::size_t first, std::size_t second, double norm);
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  double commutator_norm() const { return norm_; }

 private:
  std::size_t first_;
  std::size_t second_;
  double norm_;
};

/// Expands a pseudoseparate form into its projector pair: P_i is the sum of
/// the tensor products of part projectors over the f-preimage of i.
BinaryMeasurement expand_f_separate(const PseudoseparateForm& form);

/// xor-separate form of the parity measurement ((I + g_i sigma_i (x) u sigma_i u^dag)/2, ...)
/// with (g_1, g_2, g_3) = (1, -1, 1): first part (I + sigma_i)/2, second part
/// (I + g_i u sigma_i u^dag)/2. Throws std::invalid_argument for i = I.
PseudoseparateForm solve_two_qubit_parity_form(Pauli i, const Matrix& u, Labels targets = {0, 1});

/// The parity sign g_i above.
int parity_gamma(Pauli i);

/// |U_j> = (I (x) u sigma_j)|EPR> for j = 0..3.
Vector u_basis_vector(const Matrix& u, Pauli j);

/// Measurement in the {|U_j>} basis; projector j is |U_j><U_j|.
CompleteMeasurement u_basis_measurement(const Matrix& u, Labels support = {0, 1});

/// The two commuting xor-separate measurements whose composition is the
/// {|U_j>}-basis measurement: parts ((I +- sigma_x)/2, (I +- u sigma_x u^dag)/2)
/// and ((I +- sigma_z)/2, (I +- u sigma_z u^dag)/2). Outcome 0 of the first
/// selects j in {0, 1}; outcome 0 of the second selects j in {0, 3}.
std::pair<BinaryMeasurement, BinaryMeasurement> u_basis_binary_pair(const Matrix& u,
                                                                    Labels support = {0, 1});

/// Index j recovered from the two bits of u_basis_binary_pair.
Pauli pair_index_from_bits(int x_bit, int z_bit);

/// |U_jk> = (I_12 (x) U_34)|B_j>_13 |B_k>_24 on qubits {1, 2, 3, 4}; index 4j + k.
Vector u_pair_basis_vector(const Matrix& u, Pauli j, Pauli k);
CompleteMeasurement u_pair_basis_measurement(const Matrix& u);

/// The four binary measurements (Q0+Q1, Q2+Q3), (Q0+Q3, Q1+Q2),
/// (R0+R1, R2+R3), (R0+R3, R1+R2) of the {|U_jk>} basis, each on the full
/// label set {1, 2, 3, 4}. Q_j sums over k, R_k sums over j.
std::array<BinaryMeasurement, 4> u_pair_basis_binaries(const Matrix& u);

/// The C-NOT preparation set in pseudoseparate form:
///   m1 = xor[(X0,X1),(X0,X1),(X0,X1)] on (1,3,4)
///   m2 = xor[(Z0,Z1),(Z0,Z1)]         on (1,3)
///   m3 = xor[(X0,X1),(X0,X1)]         on (2,4)
///   m4 = xor[(Z0,Z1),(Z0,Z1),(Z0,Z1)] on (2,3,4)
std::array<BinaryMeasurement, 4> cnot_measurement_set();

double commutator_norm(const Matrix& a, const Matrix& b);

/// Joint measurement of pairwise-commuting binaries on `system` (the sorted
/// union of supports when empty). Outcome index has the first measurement's
/// bit as its most significant bit. Throws NonCommutingError.
CompleteMeasurement compose_binaries(const std::vector<BinaryMeasurement>& ms, Labels system = {});

/// True iff expanding `form` reproduces m within kStructuralTol, in either
/// outcome order.
bool is_pseudoseparate_witness(const BinaryMeasurement& m, const PseudoseparateForm& form);

/// Result of matching two projector families as sets.
struct ProjectorMatch {
  bool matched = false;
  /// bijection[a] = index in the second family matched to a.
  std::vector<int> bijection;
  double max_deviation = 0.0;
};

/// Finds an outcome bijection between two projector families with every
/// matched pair within `tol`. Families must share a support.
ProjectorMatch match_projector_sets(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                    double tol = kStructuralTol);

}  // namespace pseudosep
