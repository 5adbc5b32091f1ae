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

#include "pseudosep/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pseudosep {

namespace {

void check_labels(const Labels& labels, const char* what) {
  if (labels.size() > kMaxQubits) {
    throw std::invalid_argument(std::string(what) + ": more than " +
                                std::to_string(kMaxQubits) + " qubits");
  }
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      if (labels[a] == labels[b]) {
        throw std::invalid_argument(std::string(what) + ": duplicate qubit label " +
                                    std::to_string(labels[a]));
      }
    }
  }
}

std::size_t find_label(const Labels& labels, QubitId q, const char* what) {
  const auto it = std::find(labels.begin(), labels.end(), q);
  if (it == labels.end()) {
    throw std::invalid_argument(std::string(what) + ": unknown qubit label " +
                                std::to_string(q));
  }
  return static_cast<std::size_t>(it - labels.begin());
}

// Basis-index offsets for a subset of qubits. offsets[s] is the global index
// contribution of local index s; `mask` covers the subset's bits.
struct Scatter {
  std::vector<Eigen::Index> offsets;
  Eigen::Index mask = 0;
};

Scatter make_scatter(const Labels& system, const Labels& on, const char* what) {
  const std::size_t n = system.size();
  const std::size_t k = on.size();
  std::vector<Eigen::Index> bits(k);
  Scatter sc;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t pos = find_label(system, on[i], what);
    bits[i] = Eigen::Index{1} << (n - 1 - pos);
    sc.mask |= bits[i];
  }
  sc.offsets.assign(std::size_t{1} << k, 0);
  for (std::size_t s = 0; s < sc.offsets.size(); ++s) {
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (s & (std::size_t{1} << (k - 1 - i))) {
        off |= bits[i];
      }
    }
    sc.offsets[s] = off;
  }
  return sc;
}

// op applied to every column of `data`, acting on the qubits encoded by sc.
Matrix apply_columns(const Matrix& data, const Matrix& op, const Scatter& sc) {
  const Eigen::Index dim = data.rows();
  const Eigen::Index local = static_cast<Eigen::Index>(sc.offsets.size());
  Matrix out(data.rows(), data.cols());
  Vector gathered(local);
  for (Eigen::Index col = 0; col < data.cols(); ++col) {
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & sc.mask) {
        continue;
      }
      for (Eigen::Index s = 0; s < local; ++s) {
        gathered(s) = data(base | sc.offsets[s], col);
      }
      const Vector result = op * gathered;
      for (Eigen::Index s = 0; s < local; ++s) {
        out(base | sc.offsets[s], col) = result(s);
      }
    }
  }
  return out;
}

// rho -> A rho A^dagger.
Matrix sandwich(const Matrix& rho, const Matrix& op, const Scatter& sc) {
  const Matrix left = apply_columns(rho, op, sc);
  return apply_columns(left.adjoint(), op, sc).adjoint();
}

// Index map for a relabeling: result[new_index] = old_index.
std::vector<Eigen::Index> permutation_map(const Labels& from, const Labels& to) {
  const std::size_t n = from.size();
  std::vector<std::size_t> old_pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    old_pos[i] = find_label(from, to[i], "reordered");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index old = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (idx & (Eigen::Index{1} << (n - 1 - i))) {
        old |= Eigen::Index{1} << (n - 1 - old_pos[i]);
      }
    }
    map[static_cast<std::size_t>(idx)] = old;
  }
  return map;
}

void check_hermitian_projector(const Matrix& p, const char* what) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument(std::string(what) + ": projector is not square");
  }
  if (max_abs_diff(p, p.adjoint()) >= kStructuralTol) {
    throw std::invalid_argument(std::string(what) + ": projector is not Hermitian");
  }
  if (max_abs_diff(p * p, p) >= kStructuralTol) {
    throw std::invalid_argument(std::string(what) + ": projector is not idempotent");
  }
}

}  // namespace

QuantumState::QuantumState(StateKind kind, Vector psi, Matrix rho, Labels labels)
    : kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)), labels_(std::move(labels)) {}

QuantumState QuantumState::pure(Vector amplitudes, Labels labels) {
  check_labels(labels, "QuantumState");
  if (amplitudes.size() != (Eigen::Index{1} << labels.size())) {
    throw std::invalid_argument("QuantumState: amplitude count does not match 2^n");
  }
  if (std::abs(amplitudes.norm() - 1.0) >= kStructuralTol) {
    throw std::invalid_argument("QuantumState: state vector is not normalized");
  }
  return QuantumState(StateKind::Pure, std::move(amplitudes), Matrix(), std::move(labels));
}

QuantumState QuantumState::mixed(Matrix rho, Labels labels) {
  check_labels(labels, "QuantumState");
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("QuantumState: density matrix dimension does not match 2^n");
  }
  if (max_abs_diff(rho, rho.adjoint()) >= kStructuralTol) {
    throw std::invalid_argument("QuantumState: density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) >= kStructuralTol) {
    throw std::invalid_argument("QuantumState: density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kStructuralTol) {
    throw std::invalid_argument("QuantumState: density matrix is not positive");
  }
  return QuantumState(StateKind::Mixed, Vector(), std::move(rho), std::move(labels));
}

QuantumState QuantumState::zero(Labels labels) {
  Vector v = Vector::Zero(Eigen::Index{1} << labels.size());
  v(0) = 1.0;
  return pure(std::move(v), std::move(labels));
}

QuantumState QuantumState::from_bits(std::string_view bits, Labels labels) {
  if (bits.size() != labels.size()) {
    throw std::invalid_argument("from_bits: bit string length does not match labels");
  }
  Eigen::Index idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("from_bits: expected only '0' and '1'");
    }
    idx = (idx << 1) | (c == '1' ? 1 : 0);
  }
  Vector v = Vector::Zero(Eigen::Index{1} << labels.size());
  v(idx) = 1.0;
  return pure(std::move(v), std::move(labels));
}

bool QuantumState::has_label(QubitId q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t QuantumState::position(QubitId q) const { return find_label(labels_, q, "QuantumState"); }

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) {
    throw std::logic_error("amplitudes() called on a mixed state");
  }
  return psi_;
}

Matrix QuantumState::density() const {
  if (is_pure()) {
    return psi_ * psi_.adjoint();
  }
  return rho_;
}

QuantumState QuantumState::tensor(const QuantumState& rhs) const {
  Labels labels = labels_;
  labels.insert(labels.end(), rhs.labels_.begin(), rhs.labels_.end());
  check_labels(labels, "tensor");
  if (is_pure() && rhs.is_pure()) {
    Vector v(dim() * rhs.dim());
    for (Eigen::Index a = 0; a < dim(); ++a) {
      v.segment(a * rhs.dim(), rhs.dim()) = psi_(a) * rhs.psi_;
    }
    return QuantumState(StateKind::Pure, std::move(v), Matrix(), std::move(labels));
  }
  const Matrix l = density();
  const Matrix r = rhs.density();
  Matrix rho(l.rows() * r.rows(), l.cols() * r.cols());
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      rho.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = l(i, j) * r;
    }
  }
  return QuantumState(StateKind::Mixed, Vector(), std::move(rho), std::move(labels));
}

QuantumState QuantumState::reordered(const Labels& order) const {
  if (order.size() != labels_.size()) {
    throw std::invalid_argument("reordered: label count mismatch");
  }
  check_labels(order, "reordered");
  const auto map = permutation_map(labels_, order);
  if (is_pure()) {
    Vector v(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) {
      v(i) = psi_(map[static_cast<std::size_t>(i)]);
    }
    return QuantumState(StateKind::Pure, std::move(v), Matrix(), order);
  }
  Matrix rho(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    for (Eigen::Index j = 0; j < dim(); ++j) {
      rho(i, j) = rho_(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    }
  }
  return QuantumState(StateKind::Mixed, Vector(), std::move(rho), order);
}

QuantumState QuantumState::relabeled(QubitId from, QubitId to) const {
  Labels labels = labels_;
  labels[position(from)] = to;
  check_labels(labels, "relabeled");
  return QuantumState(kind_, psi_, rho_, std::move(labels));
}

QuantumState QuantumState::with_labels(Labels labels) const {
  if (labels.size() != labels_.size()) {
    throw std::invalid_argument("with_labels: label count mismatch");
  }
  check_labels(labels, "with_labels");
  return QuantumState(kind_, psi_, rho_, std::move(labels));
}

QuantumState QuantumState::apply(const Matrix& op, const Labels& on) const {
  check_labels(on, "apply");
  if (op.rows() != (Eigen::Index{1} << on.size()) || op.cols() != op.rows()) {
    throw std::invalid_argument("apply: operator dimension does not match qubit count");
  }
  const Scatter sc = make_scatter(labels_, on, "apply");
  if (is_pure()) {
    Vector v = apply_columns(psi_, op, sc);
    return QuantumState(StateKind::Pure, std::move(v), Matrix(), labels_);
  }
  return QuantumState(StateKind::Mixed, Vector(), sandwich(rho_, op, sc), labels_);
}

QuantumState QuantumState::trace_out(const Labels& discard) const {
  check_labels(discard, "trace_out");
  Labels kept;
  for (QubitId q : labels_) {
    if (std::find(discard.begin(), discard.end(), q) == discard.end()) {
      kept.push_back(q);
    }
  }
  for (QubitId q : discard) {
    find_label(labels_, q, "trace_out");
  }
  if (kept.empty()) {
    throw std::invalid_argument("trace_out: cannot discard every qubit");
  }
  Labels order = kept;
  order.insert(order.end(), discard.begin(), discard.end());
  const QuantumState r = reordered(order);
  const Eigen::Index dk = Eigen::Index{1} << kept.size();
  const Eigen::Index dd = Eigen::Index{1} << discard.size();
  if (r.is_pure()) {
    // Row-major reshape: m(kept, discarded).
    Matrix m(dk, dd);
    for (Eigen::Index a = 0; a < dk; ++a) {
      for (Eigen::Index b = 0; b < dd; ++b) {
        m(a, b) = r.psi_(a * dd + b);
      }
    }
    Eigen::Index best = 0;
    m.colwise().squaredNorm().maxCoeff(&best);
    const Vector u = m.col(best) / m.col(best).norm();
    const double captured = (u.adjoint() * m).squaredNorm();
    if (1.0 - captured < kStructuralTol) {
      return QuantumState(StateKind::Pure, u, Matrix(), std::move(kept));
    }
    Matrix rho = m * m.adjoint();
    return QuantumState(StateKind::Mixed, Vector(), std::move(rho), std::move(kept));
  }
  Matrix rho = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index b = 0; b < dd; ++b) {
        acc += r.rho_(a * dd + b, c * dd + b);
      }
      rho(a, c) = acc;
    }
  }
  return QuantumState(StateKind::Mixed, Vector(), std::move(rho), std::move(kept));
}

Projector Projector::make(Matrix matrix, Labels support) {
  check_labels(support, "Projector");
  if (matrix.rows() != (Eigen::Index{1} << support.size())) {
    throw std::invalid_argument("Projector: dimension does not match support");
  }
  check_hermitian_projector(matrix, "Projector");
  return Projector{std::move(matrix), std::move(support)};
}

Instrument::Instrument(std::vector<Matrix> projectors, Labels support)
    : projectors_(std::move(projectors)), support_(std::move(support)) {
  check_labels(support_, "Instrument");
  if (projectors_.empty()) {
    throw std::invalid_argument("Instrument: no projectors");
  }
  const Eigen::Index dim = Eigen::Index{1} << support_.size();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& p : projectors_) {
    if (p.rows() != dim || p.cols() != dim) {
      throw std::invalid_argument("Instrument: projector dimension does not match support");
    }
    check_hermitian_projector(p, "Instrument");
    sum += p;
  }
  if (max_abs_diff(sum, Matrix::Identity(dim, dim)) >= kStructuralTol) {
    throw std::invalid_argument("Instrument: projectors do not sum to the identity");
  }
  for (std::size_t a = 0; a < projectors_.size(); ++a) {
    for (std::size_t b = a + 1; b < projectors_.size(); ++b) {
      if ((projectors_[a] * projectors_[b]).cwiseAbs().maxCoeff() >= kStructuralTol) {
        throw std::invalid_argument("Instrument: projectors " + std::to_string(a) + " and " +
                                    std::to_string(b) + " are not mutually annihilating");
      }
    }
  }
}

namespace {

std::vector<Matrix> matrices_of(const std::vector<Projector>& ps) {
  std::vector<Matrix> out;
  out.reserve(ps.size());
  for (const Projector& p : ps) {
    if (p.support != ps.front().support) {
      throw std::invalid_argument("Instrument: projectors act on different supports");
    }
    out.push_back(p.matrix);
  }
  return out;
}

Labels support_of(const std::vector<Projector>& ps) {
  if (ps.empty()) {
    throw std::invalid_argument("Instrument: no projectors");
  }
  return ps.front().support;
}

}  // namespace

Instrument::Instrument(const std::vector<Projector>& projectors)
    : Instrument(matrices_of(projectors), support_of(projectors)) {}

std::vector<double> outcome_probabilities(const QuantumState& state, const Instrument& instrument) {
  const Scatter sc = make_scatter(state.labels(), instrument.support(), "measure");
  std::vector<double> probs;
  probs.reserve(instrument.size());
  if (state.is_pure()) {
    for (const Matrix& p : instrument.projectors()) {
      probs.push_back(apply_columns(state.amplitudes(), p, sc).squaredNorm());
    }
  } else {
    const Matrix rho = state.density();
    for (const Matrix& p : instrument.projectors()) {
      probs.push_back(std::max(0.0, apply_columns(rho, p, sc).trace().real()));
    }
  }
  return probs;
}

MeasurementOutcome measure(const QuantumState& state, const Instrument& instrument,
                           RandomStream& rng) {
  const Scatter sc = make_scatter(state.labels(), instrument.support(), "measure");
  const auto& projectors = instrument.projectors();
  std::vector<Matrix> projected;
  std::vector<double> probs;
  projected.reserve(projectors.size());
  for (const Matrix& p : projectors) {
    if (state.is_pure()) {
      projected.push_back(apply_columns(state.amplitudes(), p, sc));
      probs.push_back(projected.back().squaredNorm());
    } else {
      projected.push_back(sandwich(state.density(), p, sc));
      probs.push_back(std::max(0.0, projected.back().trace().real()));
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (total < kStructuralTol) {
    throw std::runtime_error("measure: all outcome probabilities vanish");
  }
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  std::size_t chosen = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) {
      continue;
    }
    chosen = i;
    cumulative += probs[i];
    if (u < cumulative) {
      break;
    }
  }
  const double p = probs[chosen];
  if (state.is_pure()) {
    Vector v = projected[chosen].col(0) / std::sqrt(p);
    return {static_cast<int>(chosen), QuantumState::pure(std::move(v), state.labels()), p / total};
  }
  Matrix rho = projected[chosen] / p;
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return {static_cast<int>(chosen), QuantumState::mixed(std::move(rho), state.labels()), p / total};
}

QuantumState epr_state(Labels labels) {
  Vector v = Vector::Zero(4);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = 1.0 / std::sqrt(2.0);
  return QuantumState::pure(std::move(v), std::move(labels));
}

QuantumState bell_state(Pauli i, Labels labels) {
  if (labels.size() != 2) {
    throw std::invalid_argument("bell_state: needs exactly two labels");
  }
  const QubitId second = labels[1];
  return epr_state(std::move(labels)).apply(pauli_matrix(i), {second});
}

Matrix bell_projector(Pauli i) {
  const Vector v = bell_state(i).amplitudes();
  return v * v.adjoint();
}

Matrix embed(const Matrix& op, const Labels& on, const Labels& system) {
  check_labels(on, "embed");
  check_labels(system, "embed");
  if (op.rows() != (Eigen::Index{1} << on.size()) || op.cols() != op.rows()) {
    throw std::invalid_argument("embed: operator dimension does not match qubit count");
  }
  const Scatter sc = make_scatter(system, on, "embed");
  const Eigen::Index dim = Eigen::Index{1} << system.size();
  return apply_columns(Matrix::Identity(dim, dim), op, sc);
}

double fidelity_up_to_phase(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity: label sets differ");
  }
  for (QubitId q : a.labels()) {
    if (!b.has_label(q)) {
      throw std::invalid_argument("fidelity: label sets differ");
    }
  }
  const QuantumState bb = b.reordered(a.labels());
  double f = 0.0;
  if (a.is_pure() && bb.is_pure()) {
    f = std::norm(a.amplitudes().dot(bb.amplitudes()));
  } else if (a.is_pure()) {
    f = (a.amplitudes().adjoint() * bb.density() * a.amplitudes())(0, 0).real();
  } else if (bb.is_pure()) {
    f = (bb.amplitudes().adjoint() * a.density() * bb.amplitudes())(0, 0).real();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> ea(a.density());
    const Eigen::VectorXd lam = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_a = ea.eigenvectors() * lam.cast<Complex>().asDiagonal() *
                          ea.eigenvectors().adjoint();
    const Matrix inner = sqrt_a * bb.density() * sqrt_a;
    Eigen::SelfAdjointEigenSolver<Matrix> ei((inner + inner.adjoint()) * 0.5,
                                             Eigen::EigenvaluesOnly);
    const double tr = ei.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    f = tr * tr;
  }
  return std::clamp(f, 0.0, 1.0);
}

QuantumState random_state(Labels labels, RandomStream& rng) {
  const int dim = 1 << labels.size();
  return QuantumState::pure(haar_vector(dim, rng), std::move(labels));
}

}  // namespace pseudosep
