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

#include "pseudosep/pauli.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace pseudosep {

Pauli pauli_from_index(int i) {
  if (i < 0 || i > 3) {
    throw std::out_of_range("Pauli index out of range: " + std::to_string(i));
  }
  return static_cast<Pauli>(i);
}

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[index_of(p)];
}

Complex Phase::value() const {
  static const std::array<Complex, 4> kValues = {Complex(1, 0), Complex(0, 1),
                                                 Complex(-1, 0), Complex(0, -1)};
  return kValues[power_];
}

std::string Phase::str() const {
  static const std::array<const char*, 4> kNames = {"+1", "+i", "-1", "-i"};
  return kNames[power_];
}

std::optional<Phase> Phase::nearest(Complex c, double tol) {
  for (int k = 0; k < 4; ++k) {
    const Phase p = from_power(k);
    if (std::abs(c - p.value()) < tol) {
      return p;
    }
  }
  return std::nullopt;
}

PauliProduct pauli_product(Pauli a, Pauli b) {
  if (a == Pauli::I) {
    return {Phase::one(), b};
  }
  if (b == Pauli::I) {
    return {Phase::one(), a};
  }
  if (a == b) {
    return {Phase::one(), Pauli::I};
  }
  const int ia = index_of(a);
  const int ib = index_of(b);
  const Pauli third = static_cast<Pauli>(6 - ia - ib);
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? Phase::i() : Phase::minus_i(), third};
}

const Matrix& pauli_matrix(Pauli p) {
  static const std::array<Matrix, 4> kMatrices = [] {
    std::array<Matrix, 4> m;
    const Complex i(0, 1);
    m[0] = Matrix::Identity(2, 2);
    m[1] = Matrix(2, 2);
    m[1] << 0, 1, 1, 0;
    m[2] = Matrix(2, 2);
    m[2] << 0, -i, i, 0;
    m[3] = Matrix(2, 2);
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return kMatrices[index_of(p)];
}

PhasedPauli::PhasedPauli(Phase phase, std::vector<Pauli> ops)
    : phase_(phase), ops_(std::move(ops)) {}

PhasedPauli PhasedPauli::identity(std::size_t num_qubits) {
  return PhasedPauli(std::vector<Pauli>(num_qubits, Pauli::I));
}

PhasedPauli PhasedPauli::parse(std::string_view text) {
  Phase phase = Phase::one();
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') {
      phase = Phase::minus_one();
    }
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = phase * Phase::i();
    ++pos;
  }
  std::vector<Pauli> ops;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': ops.push_back(Pauli::I); break;
      case 'X': ops.push_back(Pauli::X); break;
      case 'Y': ops.push_back(Pauli::Y); break;
      case 'Z': ops.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("bad Pauli string: " + std::string(text));
    }
  }
  if (ops.empty()) {
    throw std::invalid_argument("empty Pauli string");
  }
  return PhasedPauli(phase, std::move(ops));
}

Matrix PhasedPauli::matrix() const { return pauli_matrix(*this); }

PhasedPauli PhasedPauli::operator*(const PhasedPauli& rhs) const {
  if (rhs.num_qubits() != num_qubits()) {
    throw std::invalid_argument("Pauli product: qubit count mismatch");
  }
  Phase phase = phase_ * rhs.phase_;
  std::vector<Pauli> ops(num_qubits());
  for (std::size_t q = 0; q < ops.size(); ++q) {
    const auto [p, r] = pauli_product(ops_[q], rhs.ops_[q]);
    phase = phase * p;
    ops[q] = r;
  }
  return PhasedPauli(phase, std::move(ops));
}

PhasedPauli PhasedPauli::operator-() const { return times(Phase::minus_one()); }

PhasedPauli PhasedPauli::tensor(const PhasedPauli& rhs) const {
  std::vector<Pauli> ops = ops_;
  ops.insert(ops.end(), rhs.ops_.begin(), rhs.ops_.end());
  return PhasedPauli(phase_ * rhs.phase_, std::move(ops));
}

bool PhasedPauli::commutes_with(const PhasedPauli& rhs) const {
  if (rhs.num_qubits() != num_qubits()) {
    throw std::invalid_argument("Pauli commutator: qubit count mismatch");
  }
  int anticommuting = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    const Pauli a = ops_[q];
    const Pauli b = rhs.ops_[q];
    if (a != Pauli::I && b != Pauli::I && a != b) {
      ++anticommuting;
    }
  }
  return anticommuting % 2 == 0;
}

bool PhasedPauli::is_identity_up_to_phase() const {
  for (Pauli p : ops_) {
    if (p != Pauli::I) {
      return false;
    }
  }
  return true;
}

std::string PhasedPauli::str() const {
  std::string out;
  switch (phase_.power()) {
    case 0: out = "+"; break;
    case 1: out = "+i"; break;
    case 2: out = "-"; break;
    default: out = "-i"; break;
  }
  for (Pauli p : ops_) {
    out += pauli_char(p);
  }
  return out;
}

Matrix pauli_matrix(const PhasedPauli& p) {
  if (p.num_qubits() == 0) {
    throw std::invalid_argument("pauli_matrix: empty Pauli string");
  }
  Matrix out = pauli_matrix(p.op(0));
  for (std::size_t q = 1; q < p.num_qubits(); ++q) {
    Matrix next = Eigen::kroneckerProduct(out, pauli_matrix(p.op(q))).eval();
    out = std::move(next);
  }
  return p.phase().value() * out;
}

namespace {

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  if ((Eigen::Index{1} << n) != dim || n == 0) {
    return -1;
  }
  return n;
}

}  // namespace

std::optional<PhasedPauli> as_phased_pauli(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return std::nullopt;
  }
  const int n = qubits_for_dim(m.rows());
  if (n < 0) {
    return std::nullopt;
  }
  // A Pauli string is monomial: row r has its single nonzero at r ^ xmask.
  Eigen::Index xmask = 0;
  m.row(0).cwiseAbs().maxCoeff(&xmask);
  const Complex anchor = m(0, xmask);
  if (std::abs(anchor) < 0.5) {
    return std::nullopt;
  }
  std::vector<Pauli> ops(n);
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    const bool x = (xmask & bit) != 0;
    // Relative sign of the entry one Z-flip away encodes the z bit.
    const bool z = std::real(m(bit, bit ^ xmask) / anchor) < 0.0;
    ops[q] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
  }
  const PhasedPauli candidate(std::move(ops));
  const Matrix p = candidate.matrix();
  const Complex coeff = (p.adjoint() * m).trace() / static_cast<double>(m.rows());
  const auto phase = Phase::nearest(coeff, 0.25);
  if (!phase) {
    return std::nullopt;
  }
  const PhasedPauli snapped = candidate.times(*phase);
  if (max_abs_diff(m, snapped.matrix()) >= tol) {
    return std::nullopt;
  }
  return snapped;
}

ConjugationEntry conjugate(const Matrix& gate, const PhasedPauli& p, std::string gate_name) {
  const Eigen::Index dim = Eigen::Index{1} << p.num_qubits();
  if (gate.rows() != dim || gate.cols() != dim) {
    throw std::invalid_argument("conjugate: gate is " + std::to_string(gate.rows()) + "x" +
                                std::to_string(gate.cols()) + ", Pauli needs " +
                                std::to_string(dim) + "x" + std::to_string(dim));
  }
  Matrix out = gate * p.matrix() * gate.adjoint();
  auto pauli = as_phased_pauli(out);
  return ConjugationEntry{std::move(gate_name), p, std::move(out), std::move(pauli)};
}

CnotFrame cnot_frame_update(Pauli control, Pauli target) {
  // Images of single-qubit Paulis under conjugation by CNOT, as two-qubit
  // strings (control, target). Conjugation is multiplicative, so the image
  // of sigma_c (x) sigma_t is the product of the two images.
  static const std::array<PhasedPauli, 4> kControlImage = {
      PhasedPauli::parse("II"), PhasedPauli::parse("XX"), PhasedPauli::parse("YX"),
      PhasedPauli::parse("ZI")};
  static const std::array<PhasedPauli, 4> kTargetImage = {
      PhasedPauli::parse("II"), PhasedPauli::parse("IX"), PhasedPauli::parse("ZY"),
      PhasedPauli::parse("ZZ")};
  const PhasedPauli image = kControlImage[index_of(control)] * kTargetImage[index_of(target)];
  return {image.phase(), image.op(0), image.op(1)};
}

Matrix hadamard_matrix() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix t_matrix() {
  const double a = std::numbers::pi / 8.0;
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = std::polar(1.0, -a);
  t(1, 1) = std::polar(1.0, a);
  return t;
}

Matrix cnot_matrix() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(2, 3) = 1;
  u(3, 2) = 1;
  return u;
}

}  // namespace pseudosep
