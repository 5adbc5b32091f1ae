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

#include "pseudosep/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace pseudosep {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

std::string join_labels(const Labels& labels) {
  std::string out = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += (i ? "," : "") + std::to_string(labels[i]);
  }
  return out + ")";
}

Labels sorted_union(const Labels& a, const Labels& b) {
  Labels out = a;
  for (QubitId q : b) {
    if (std::find(out.begin(), out.end(), q) == out.end()) {
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SingleQubitBinary SingleQubitBinary::from_bloch(const Eigen::Vector3d& bloch) {
  if (std::abs(bloch.norm() - 1.0) >= kStructuralTol) {
    throw std::invalid_argument("SingleQubitBinary: Bloch vector is not a unit vector");
  }
  return SingleQubitBinary(bloch);
}

SingleQubitBinary SingleQubitBinary::from_observable(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw std::invalid_argument("SingleQubitBinary: observable must be 2x2");
  }
  if (max_abs_diff(a, a.adjoint()) >= kStructuralTol || !is_unitary(a) ||
      std::abs(a.trace()) >= kStructuralTol) {
    throw std::invalid_argument(
        "SingleQubitBinary: observable must be a traceless Hermitian unitary");
  }
  Eigen::Vector3d bloch;
  for (int k = 0; k < 3; ++k) {
    bloch(k) = 0.5 * (a * pauli_matrix(pauli_from_index(k + 1))).trace().real();
  }
  return from_bloch(bloch / bloch.norm());
}

SingleQubitBinary SingleQubitBinary::X() { return SingleQubitBinary({1.0, 0.0, 0.0}); }
SingleQubitBinary SingleQubitBinary::Y() { return SingleQubitBinary({0.0, 1.0, 0.0}); }
SingleQubitBinary SingleQubitBinary::Z() { return SingleQubitBinary({0.0, 0.0, 1.0}); }
SingleQubitBinary SingleQubitBinary::W() {
  const double r = 1.0 / std::sqrt(2.0);
  return SingleQubitBinary({r, r, 0.0});
}

Matrix SingleQubitBinary::p0() const {
  Matrix a = bloch_(0) * pauli_matrix(Pauli::X) + bloch_(1) * pauli_matrix(Pauli::Y) +
             bloch_(2) * pauli_matrix(Pauli::Z);
  return 0.5 * (identity(2) + a);
}

Matrix SingleQubitBinary::p1() const { return identity(2) - p0(); }

std::string SingleQubitBinary::name() const {
  static const std::array<std::pair<char, SingleQubitBinary (*)()>, 4> kCatalogue = {{
      {'X', &SingleQubitBinary::X},
      {'Y', &SingleQubitBinary::Y},
      {'Z', &SingleQubitBinary::Z},
      {'W', &SingleQubitBinary::W},
  }};
  for (const auto& [letter, make] : kCatalogue) {
    const Eigen::Vector3d axis = make().bloch();
    if ((bloch_ - axis).norm() < kStructuralTol) {
      return std::string("(") + letter + "0," + letter + "1)";
    }
    if ((bloch_ + axis).norm() < kStructuralTol) {
      return std::string("(") + letter + "1," + letter + "0)";
    }
  }
  return "(custom)";
}

BalancedBooleanFn::BalancedBooleanFn(int arity, std::vector<std::uint8_t> truth_table)
    : arity_(arity), table_(std::move(truth_table)) {
  if (arity_ < 1 || arity_ > static_cast<int>(kMaxQubits)) {
    throw std::invalid_argument("BalancedBooleanFn: arity out of range");
  }
  if (table_.size() != (std::size_t{1} << arity_)) {
    throw std::invalid_argument("BalancedBooleanFn: truth table must have 2^n entries");
  }
  std::size_t ones = 0;
  for (auto& bit : table_) {
    if (bit > 1) {
      throw std::invalid_argument("BalancedBooleanFn: truth table entries must be 0 or 1");
    }
    ones += bit;
  }
  if (ones != table_.size() / 2) {
    throw std::invalid_argument("BalancedBooleanFn: function is not balanced");
  }
}

BalancedBooleanFn BalancedBooleanFn::parity(int arity) {
  std::vector<std::uint8_t> table(std::size_t{1} << arity);
  for (std::size_t x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint8_t>(std::popcount(x) & 1);
  }
  return BalancedBooleanFn(arity, std::move(table));
}

bool BalancedBooleanFn::is_parity() const { return table_ == parity(arity_).table(); }

PseudoseparateForm::PseudoseparateForm(BalancedBooleanFn fn, std::vector<SingleQubitBinary> ps,
                                       Labels ts)
    : f(std::move(fn)), parts(std::move(ps)), targets(std::move(ts)) {
  if (parts.size() != static_cast<std::size_t>(f.arity()) || targets.size() != parts.size()) {
    throw std::invalid_argument("PseudoseparateForm: arity, parts and targets disagree");
  }
  Labels sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("PseudoseparateForm: duplicate target label");
  }
}

std::string PseudoseparateForm::describe() const {
  std::string out = f.is_parity() ? "xor[" : "f[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += (i ? "," : "") + parts[i].name();
  }
  return out + "] on " + join_labels(targets);
}

namespace {

Instrument binary_instrument(Matrix p0, Matrix p1, Labels support) {
  const double half = std::ldexp(1.0, static_cast<int>(support.size()) - 1);
  if (std::abs(p0.trace().real() - half) >= kStructuralTol ||
      std::abs(p1.trace().real() - half) >= kStructuralTol) {
    throw std::invalid_argument("BinaryMeasurement: projector traces must both equal 2^(n-1)");
  }
  return Instrument({std::move(p0), std::move(p1)}, std::move(support));
}

}  // namespace

BinaryMeasurement::BinaryMeasurement(Matrix p0, Matrix p1, Labels support,
                                     std::optional<PseudoseparateForm> form)
    : instrument_(binary_instrument(std::move(p0), std::move(p1), std::move(support))),
      form_(std::move(form)) {}

BinaryMeasurement BinaryMeasurement::embedded(const Labels& system) const {
  return BinaryMeasurement(embed(p0(), support(), system), embed(p1(), support(), system), system,
                           form_);
}

std::string BinaryMeasurement::describe() const {
  if (form_) {
    return form_->describe();
  }
  return "binary on " + join_labels(support());
}

NonCommutingError::NonCommutingError(std::size_t first, std::size_t second, double norm)
    : std::invalid_argument("measurements " + std::to_string(first) + " and " +
                            std::to_string(second) + " do not commute (commutator norm " +
                            std::to_string(norm) + ")"),
      first_(first),
      second_(second),
      norm_(norm) {}

BinaryMeasurement expand_f_separate(const PseudoseparateForm& form) {
  const int n = form.f.arity();
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::array<Matrix, 2> sums = {Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    Matrix term = form.parts[0].projector((bits >> (n - 1)) & 1);
    for (int q = 1; q < n; ++q) {
      term = kron(term, form.parts[q].projector((bits >> (n - 1 - q)) & 1));
    }
    sums[form.f(bits)] += term;
  }
  return BinaryMeasurement(std::move(sums[0]), std::move(sums[1]), form.targets, form);
}

int parity_gamma(Pauli i) {
  switch (i) {
    case Pauli::X: return 1;
    case Pauli::Y: return -1;
    case Pauli::Z: return 1;
    default: throw std::invalid_argument("parity_gamma: index must be 1, 2 or 3");
  }
}

PseudoseparateForm solve_two_qubit_parity_form(Pauli i, const Matrix& u, Labels targets) {
  if (i == Pauli::I) {
    throw std::invalid_argument("solve_two_qubit_parity_form: index must be 1, 2 or 3");
  }
  if (!is_unitary(u) || u.rows() != 2) {
    throw std::invalid_argument("solve_two_qubit_parity_form: u must be a 2x2 unitary");
  }
  const Matrix& s = pauli_matrix(i);
  // (alpha_i, beta_i) = (1, gamma_i): the sign lands on the second part.
  const auto first = SingleQubitBinary::from_observable(s);
  const auto second = SingleQubitBinary::from_observable(parity_gamma(i) * (u * s * u.adjoint()));
  return PseudoseparateForm(BalancedBooleanFn::parity(2), {first, second}, std::move(targets));
}

Vector u_basis_vector(const Matrix& u, Pauli j) {
  const Matrix op = kron(identity(2), u * pauli_matrix(j));
  return op * epr_state().amplitudes();
}

CompleteMeasurement u_basis_measurement(const Matrix& u, Labels support) {
  if (u.rows() != 2 || !is_unitary(u)) {
    throw std::invalid_argument("u_basis_measurement: u must be a 2x2 unitary");
  }
  std::vector<Matrix> projectors;
  for (Pauli j : kAllPaulis) {
    const Vector v = u_basis_vector(u, j);
    projectors.push_back(v * v.adjoint());
  }
  return CompleteMeasurement(std::move(projectors), std::move(support));
}

std::pair<BinaryMeasurement, BinaryMeasurement> u_basis_binary_pair(const Matrix& u,
                                                                    Labels support) {
  if (u.rows() != 2 || !is_unitary(u)) {
    throw std::invalid_argument("u_basis_binary_pair: u must be a 2x2 unitary");
  }
  return {expand_f_separate(solve_two_qubit_parity_form(Pauli::X, u, support)),
          expand_f_separate(solve_two_qubit_parity_form(Pauli::Z, u, support))};
}

Pauli pair_index_from_bits(int x_bit, int z_bit) {
  // x_bit = 0 <=> j in {0, 1};  z_bit = 0 <=> j in {0, 3}.
  static constexpr Pauli kTable[2][2] = {{Pauli::I, Pauli::X}, {Pauli::Z, Pauli::Y}};
  return kTable[x_bit & 1][z_bit & 1];
}

Vector u_pair_basis_vector(const Matrix& u, Pauli j, Pauli k) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw std::invalid_argument("u_pair_basis_vector: u must be 4x4");
  }
  const Labels system = {1, 2, 3, 4};
  QuantumState s = bell_state(j, {1, 3}).tensor(bell_state(k, {2, 4})).reordered(system);
  return s.apply(u, {3, 4}).amplitudes();
}

CompleteMeasurement u_pair_basis_measurement(const Matrix& u) {
  if (u.rows() != 4 || !is_unitary(u)) {
    throw std::invalid_argument("u_pair_basis_measurement: u must be a 4x4 unitary");
  }
  std::vector<Matrix> projectors;
  for (Pauli j : kAllPaulis) {
    for (Pauli k : kAllPaulis) {
      const Vector v = u_pair_basis_vector(u, j, k);
      projectors.push_back(v * v.adjoint());
    }
  }
  return CompleteMeasurement(std::move(projectors), {1, 2, 3, 4});
}

std::array<BinaryMeasurement, 4> u_pair_basis_binaries(const Matrix& u) {
  const CompleteMeasurement basis = u_pair_basis_measurement(u);
  const auto& p = basis.projectors();
  const Labels system = {1, 2, 3, 4};
  auto q = [&](int j) {
    Matrix s = Matrix::Zero(16, 16);
    for (int k = 0; k < 4; ++k) s += p[4 * j + k];
    return s;
  };
  auto r = [&](int k) {
    Matrix s = Matrix::Zero(16, 16);
    for (int j = 0; j < 4; ++j) s += p[4 * j + k];
    return s;
  };
  return {BinaryMeasurement(q(0) + q(1), q(2) + q(3), system),
          BinaryMeasurement(q(0) + q(3), q(1) + q(2), system),
          BinaryMeasurement(r(0) + r(1), r(2) + r(3), system),
          BinaryMeasurement(r(0) + r(3), r(1) + r(2), system)};
}

std::array<BinaryMeasurement, 4> cnot_measurement_set() {
  const auto x = SingleQubitBinary::X();
  const auto z = SingleQubitBinary::Z();
  return {
      expand_f_separate(PseudoseparateForm(BalancedBooleanFn::parity(3), {x, x, x}, {1, 3, 4})),
      expand_f_separate(PseudoseparateForm(BalancedBooleanFn::parity(2), {z, z}, {1, 3})),
      expand_f_separate(PseudoseparateForm(BalancedBooleanFn::parity(2), {x, x}, {2, 4})),
      expand_f_separate(PseudoseparateForm(BalancedBooleanFn::parity(3), {z, z, z}, {2, 3, 4})),
  };
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  const Matrix c = a * b - b * a;
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

CompleteMeasurement compose_binaries(const std::vector<BinaryMeasurement>& ms, Labels system) {
  if (ms.empty()) {
    throw std::invalid_argument("compose_binaries: no measurements");
  }
  if (system.empty()) {
    for (const auto& m : ms) {
      system = sorted_union(system, m.support());
    }
  }
  std::vector<Matrix> p0s;
  for (const auto& m : ms) {
    p0s.push_back(embed(m.p0(), m.support(), system));
  }
  for (std::size_t a = 0; a < ms.size(); ++a) {
    for (std::size_t b = a + 1; b < ms.size(); ++b) {
      const double norm = commutator_norm(p0s[a], p0s[b]);
      if (norm >= kStructuralTol) {
        throw NonCommutingError(a, b, norm);
      }
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << system.size();
  const std::size_t n = ms.size();
  std::vector<Matrix> joint;
  for (std::size_t outcome = 0; outcome < (std::size_t{1} << n); ++outcome) {
    Matrix prod = identity(dim);
    for (std::size_t i = 0; i < n; ++i) {
      const bool bit = (outcome >> (n - 1 - i)) & 1;
      prod = prod * (bit ? Matrix(identity(dim) - p0s[i]) : p0s[i]);
    }
    joint.push_back(std::move(prod));
  }
  return CompleteMeasurement(std::move(joint), std::move(system));
}

bool is_pseudoseparate_witness(const BinaryMeasurement& m, const PseudoseparateForm& form) {
  const BinaryMeasurement e = expand_f_separate(form);
  const Labels system = sorted_union(m.support(), form.targets);
  const Matrix a0 = embed(m.p0(), m.support(), system);
  const Matrix a1 = embed(m.p1(), m.support(), system);
  const Matrix b0 = embed(e.p0(), e.support(), system);
  const Matrix b1 = embed(e.p1(), e.support(), system);
  const bool direct = max_abs_diff(a0, b0) < kStructuralTol && max_abs_diff(a1, b1) < kStructuralTol;
  const bool crossed =
      max_abs_diff(a0, b1) < kStructuralTol && max_abs_diff(a1, b0) < kStructuralTol;
  return direct || crossed;
}

ProjectorMatch match_projector_sets(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                    double tol) {
  ProjectorMatch result;
  if (a.size() != b.size()) {
    result.max_deviation = INFINITY;
    return result;
  }
  const std::size_t n = a.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double nearest = INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = max_abs_diff(a[i], b[j]);
      nearest = std::min(nearest, dist[i][j]);
    }
    result.max_deviation = std::max(result.max_deviation, nearest);
  }
  std::vector<int> assign(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == n) {
      return true;
    }
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && dist[i][j] < tol) {
        order.push_back(j);
      }
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return dist[i][x] < dist[i][y]; });
    for (std::size_t j : order) {
      used[j] = true;
      assign[i] = static_cast<int>(j);
      if (search(i + 1)) {
        return true;
      }
      used[j] = false;
    }
    assign[i] = -1;
    return false;
  };
  result.matched = search(0);
  if (result.matched) {
    result.bijection = assign;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, dist[i][static_cast<std::size_t>(assign[i])]);
    }
    result.max_deviation = worst;
  }
  return result;
}

}  // namespace pseudosep
