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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "oracle.hpp"
#include "pseudosep/pauli.hpp"
#include "pseudosep/qcore.hpp"
#include "pseudosep/random.hpp"

namespace pseudosep {
namespace {

using oracle::kRt2;

Matrix computational_projector(int dim, int index) {
  Matrix p = Matrix::Zero(dim, dim);
  p(index, index) = 1;
  return p;
}

Instrument z_basis(Labels support) {
  const int dim = 1 << support.size();
  std::vector<Matrix> ps;
  for (int i = 0; i < dim; ++i) ps.push_back(computational_projector(dim, i));
  return Instrument(ps, support);
}

Instrument bell_basis(Labels support = {0, 1}) {
  std::vector<Matrix> ps;
  for (Pauli p : kAllPaulis) ps.push_back(bell_projector(p));
  return Instrument(ps, std::move(support));
}

TEST(EprState, ReferenceCases) {
  const QuantumState epr = epr_state();
  EXPECT_LT(max_abs_diff(epr.amplitudes(), oracle::ket({1 / kRt2, 0, 0, 1 / kRt2})), 1e-15);
  EXPECT_NEAR(epr.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_up_to_phase(epr, bell_state(Pauli::I)), 1.0, 1e-15);
}

TEST(BellState, ReferenceCasesAndGram) {
  EXPECT_LT(max_abs_diff(bell_state(Pauli::I).amplitudes(), oracle::ket({1 / kRt2, 0, 0, 1 / kRt2})),
            1e-15);
  EXPECT_LT(max_abs_diff(bell_state(Pauli::Z).amplitudes(), oracle::ket({1 / kRt2, 0, 0, -1 / kRt2})),
            1e-15);
  for (int i = 0; i < 4; ++i) {
    const Vector bi = bell_state(pauli_from_index(i)).amplitudes();
    EXPECT_LT(max_abs_diff(bi, oracle::bell(i)), 1e-15);
    EXPECT_LT(max_abs_diff(bell_projector(pauli_from_index(i)), bi * bi.adjoint()), 1e-15);
    for (int j = 0; j < 4; ++j) {
      const Complex g = bi.dot(bell_state(pauli_from_index(j)).amplitudes());
      EXPECT_LT(std::abs(g - (i == j ? 1.0 : 0.0)), 1e-12);
    }
  }
}

TEST(QuantumState, ValidationRejectsBadInput) {
  EXPECT_THROW(QuantumState::pure(oracle::ket({1, 1}), {0}), std::invalid_argument);
  EXPECT_THROW(QuantumState::pure(oracle::ket({1, 0, 0}), {0}), std::invalid_argument);
  EXPECT_THROW(QuantumState::pure(oracle::ket({1, 0, 0, 0}), {0, 0}), std::invalid_argument);
  EXPECT_THROW(QuantumState::zero({0, 1, 2, 3, 4, 5, 6, 7, 8}), std::invalid_argument);
  EXPECT_NO_THROW(QuantumState::zero({0, 1, 2, 3, 4, 5, 6, 7}));

  Matrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.5, 0, 0.5;
  EXPECT_THROW(QuantumState::mixed(not_hermitian, {0}), std::invalid_argument);
  EXPECT_THROW(QuantumState::mixed(Matrix::Identity(2, 2), {0}), std::invalid_argument);
  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(QuantumState::mixed(negative, {0}), std::invalid_argument);
  EXPECT_NO_THROW(QuantumState::mixed(Matrix::Identity(2, 2) / 2.0, {0}));
}

TEST(QuantumState, FromBitsUsesFirstLabelAsMostSignificant) {
  const QuantumState s = QuantumState::from_bits("100", {5, 6, 7});
  EXPECT_LT(max_abs_diff(s.amplitudes(), oracle::basis(8, 4)), 1e-15);
  EXPECT_THROW(QuantumState::from_bits("102", {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(QuantumState::from_bits("10", {0, 1, 2}), std::invalid_argument);
}

TEST(QuantumState, TensorReorderAndRelabel) {
  std::mt19937_64 gen(3);
  const Vector a = oracle::random_vector(2, gen);
  const Vector b = oracle::random_vector(4, gen);
  const QuantumState s = QuantumState::pure(a, {4}).tensor(QuantumState::pure(b, {1, 2}));
  EXPECT_EQ(s.labels(), (Labels{4, 1, 2}));
  EXPECT_LT(max_abs_diff(s.amplitudes(), oracle::kron(a, b)), 1e-15);
  EXPECT_THROW(s.tensor(QuantumState::zero({2})), std::invalid_argument);

  // Swapping the two factors of b|a> is the oracle kron(b, a) reordered.
  const QuantumState r = s.reordered({1, 2, 4});
  EXPECT_LT(max_abs_diff(r.amplitudes(), oracle::kron(b, a)), 1e-15);
  EXPECT_THROW(s.reordered({1, 2}), std::invalid_argument);

  const QuantumState moved = s.relabeled(4, 9);
  EXPECT_EQ(moved.labels(), (Labels{9, 1, 2}));
  EXPECT_THROW(s.relabeled(4, 1), std::invalid_argument);
  EXPECT_THROW(s.position(7), std::invalid_argument);
}

TEST(Embed, ReferenceCases) {
  EXPECT_LT(max_abs_diff(embed(pauli_matrix(Pauli::Z), {2}, {1, 2}),
                         oracle::kron(oracle::sigma(0), oracle::sigma(3))),
            1e-15);

  const Matrix cn = embed(cnot_matrix(), {1, 3}, {1, 2, 3});
  EXPECT_LT(max_abs_diff(cn * oracle::basis(8, 0b100), oracle::basis(8, 0b101)), 1e-15);

  std::mt19937_64 gen(5);
  const Matrix a = oracle::random_unitary(2, gen);
  const Matrix b = oracle::random_unitary(2, gen);
  EXPECT_LT(max_abs_diff(embed(a, {1}, {1, 2}) * embed(b, {2}, {1, 2}),
                         embed(oracle::kron(a, b), {1, 2}, {1, 2})),
            1e-14);
}

TEST(Embed, BasisActionMatchesEnumeration) {
  // CNOT with control label 3, target label 1 inside system (1, 2, 3).
  const Matrix cn = embed(cnot_matrix(), {3, 1}, {1, 2, 3});
  for (int x = 0; x < 8; ++x) {
    const int b3 = x & 1;
    const int y = x ^ (b3 << 2);
    EXPECT_LT(max_abs_diff(cn * oracle::basis(8, x), oracle::basis(8, y)), 1e-15) << x;
  }
}

TEST(Embed, PreservesStructure) {
  RandomStream rng(17);
  const Labels system = {0, 1, 2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = haar_unitary(4, rng);
    const Matrix eu = embed(u, {3, 1}, system);
    EXPECT_TRUE(is_unitary(eu, 1e-12));
    const Vector v = haar_vector(4, rng);
    const Matrix p = v * v.adjoint();
    const Matrix ep = embed(p, {0, 2}, system);
    EXPECT_LT(max_abs_diff(ep * ep, ep), 1e-12);
    EXPECT_LT(max_abs_diff(ep, ep.adjoint()), 1e-12);
    EXPECT_LT(max_abs_diff(eu * ep, ep * eu), 1e-12);
  }
}

TEST(Embed, Errors) {
  EXPECT_THROW(embed(pauli_matrix(Pauli::X), {5}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(embed(cnot_matrix(), {1, 1}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(embed(pauli_matrix(Pauli::X), {1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(embed(cnot_matrix(), {1}, {1, 2}), std::invalid_argument);
}

TEST(Apply, MatchesEmbeddedOperator) {
  RandomStream rng(19);
  const QuantumState s = random_state({0, 1, 2}, rng);
  const Matrix u = haar_unitary(4, rng);
  const QuantumState out = s.apply(u, {2, 0});
  EXPECT_LT(max_abs_diff(out.amplitudes(), embed(u, {2, 0}, {0, 1, 2}) * s.amplitudes()), 1e-14);

  const QuantumState mixed = QuantumState::mixed(s.density(), s.labels());
  const QuantumState mout = mixed.apply(u, {2, 0});
  EXPECT_FALSE(mout.is_pure());
  EXPECT_NEAR(fidelity_up_to_phase(out, mout), 1.0, 1e-12);
}

TEST(Measure, ReferenceCases) {
  RandomStream rng(1);
  const auto zero = measure(QuantumState::zero({0}), z_basis({0}), rng);
  EXPECT_EQ(zero.outcome, 0);
  EXPECT_NEAR(zero.probability, 1.0, 1e-15);
  EXPECT_NEAR(fidelity_up_to_phase(zero.post, QuantumState::zero({0})), 1.0, 1e-15);

  const auto b3 = measure(bell_state(Pauli::Z), bell_basis(), rng);
  EXPECT_EQ(b3.outcome, 3);
  EXPECT_NEAR(b3.probability, 1.0, 1e-15);

  const QuantumState plus = QuantumState::pure(oracle::ket({1 / kRt2, 1 / kRt2}), {0});
  const auto probs = outcome_probabilities(plus, z_basis({0}));
  EXPECT_NEAR(probs[0], 0.5, 1e-15);
  EXPECT_NEAR(probs[1], 0.5, 1e-15);
  const auto m = measure(plus, z_basis({0}), rng);
  EXPECT_NEAR(m.probability, 0.5, 1e-15);
}

TEST(Measure, ProbabilitiesSumToOneAndRepeatIsStable) {
  RandomStream rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumState s = random_state({0, 1, 2}, rng);
    const QuantumState rho = QuantumState::mixed(
        0.7 * s.density() + 0.3 * random_state({0, 1, 2}, rng).density(), {0, 1, 2});
    const Instrument inst = bell_basis({2, 0});
    for (const QuantumState& st : {s, rho}) {
      const auto p = outcome_probabilities(st, inst);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-10);
      const auto first = measure(st, inst, rng);
      EXPECT_EQ(first.post.is_pure(), st.is_pure());
      EXPECT_NEAR(first.post.density().trace().real(), 1.0, 1e-10);
      const auto again = outcome_probabilities(first.post, inst);
      EXPECT_NEAR(again[first.outcome], 1.0, 1e-10);
      EXPECT_EQ(measure(first.post, inst, rng).outcome, first.outcome);
    }
  }
}

TEST(Measure, PostStateMatchesOracle) {
  std::mt19937_64 gen(29);
  const Vector psi = oracle::random_vector(8, gen);
  RandomStream rng(31);
  const QuantumState s = QuantumState::pure(psi, {0, 1, 2});
  const auto m = measure(s, z_basis({1}), rng);
  const Matrix p = oracle::kron({oracle::sigma(0), computational_projector(2, m.outcome), oracle::sigma(0)});
  const Vector expected = p * psi;
  EXPECT_NEAR(m.probability, expected.squaredNorm(), 1e-14);
  EXPECT_NEAR(oracle::fidelity(m.post.amplitudes(), expected.normalized()), 1.0, 1e-14);
}

TEST(Instrument, RejectsInvalidFamilies) {
  EXPECT_THROW(Instrument({computational_projector(2, 0)}, {0}), std::invalid_argument);
  EXPECT_THROW(Instrument({computational_projector(2, 0), computational_projector(2, 0)}, {0}),
               std::invalid_argument);
  Matrix not_projector = Matrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(Instrument({not_projector, not_projector}, {0}), std::invalid_argument);
  EXPECT_THROW(Instrument({computational_projector(4, 0), computational_projector(4, 1)}, {0}),
               std::invalid_argument);
  EXPECT_THROW(Projector::make(not_projector, {0}), std::invalid_argument);
}

TEST(Measure, LabelMismatchThrows) {
  RandomStream rng(1);
  EXPECT_THROW(measure(QuantumState::zero({0, 1}), z_basis({2}), rng), std::invalid_argument);
}

TEST(Fidelity, ReferenceCases) {
  RandomStream rng(37);
  const QuantumState psi = random_state({0, 1}, rng);
  const Vector phased = std::polar(1.0, 0.73) * psi.amplitudes();
  EXPECT_NEAR(fidelity_up_to_phase(psi, QuantumState::pure(phased, {0, 1})), 1.0, 1e-14);
  EXPECT_NEAR(fidelity_up_to_phase(QuantumState::zero({0}), QuantumState::from_bits("1", {0})), 0.0,
              1e-15);
  const QuantumState plus = QuantumState::pure(oracle::ket({1 / kRt2, 1 / kRt2}), {0});
  EXPECT_NEAR(fidelity_up_to_phase(QuantumState::zero({0}), plus), 0.5, 1e-15);
}

TEST(Fidelity, MixedCasesAndReordering) {
  const QuantumState plus = QuantumState::pure(oracle::ket({1 / kRt2, 1 / kRt2}), {0});
  const QuantumState half = QuantumState::mixed(Matrix::Identity(2, 2) / 2.0, {0});
  EXPECT_NEAR(fidelity_up_to_phase(plus, half), 0.5, 1e-14);
  EXPECT_NEAR(fidelity_up_to_phase(half, plus), 0.5, 1e-14);
  EXPECT_NEAR(fidelity_up_to_phase(half, half), 1.0, 1e-12);
  // Uhlmann fidelity of commuting diagonal states: (sum sqrt(p q))^2.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 0.9;
  a(1, 1) = 0.1;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 0.4;
  b(1, 1) = 0.6;
  const double expected = std::pow(std::sqrt(0.36) + std::sqrt(0.06), 2);
  EXPECT_NEAR(fidelity_up_to_phase(QuantumState::mixed(a, {0}), QuantumState::mixed(b, {0})),
              expected, 1e-12);

  const QuantumState s = QuantumState::from_bits("10", {3, 4});
  const QuantumState t = QuantumState::from_bits("01", {4, 3});
  EXPECT_NEAR(fidelity_up_to_phase(s, t), 1.0, 1e-15);
  EXPECT_THROW(fidelity_up_to_phase(s, QuantumState::zero({3, 5})), std::invalid_argument);
}

TEST(TraceOut, ProductStaysPureEntangledBecomesMixed) {
  RandomStream rng(41);
  const QuantumState a = random_state({0}, rng);
  const QuantumState b = random_state({1, 2}, rng);
  const QuantumState reduced = a.tensor(b).trace_out({0});
  ASSERT_TRUE(reduced.is_pure());
  EXPECT_EQ(reduced.labels(), (Labels{1, 2}));
  EXPECT_NEAR(fidelity_up_to_phase(reduced, b), 1.0, 1e-12);

  const QuantumState half = epr_state({0, 1}).trace_out({1});
  ASSERT_FALSE(half.is_pure());
  EXPECT_LT(max_abs_diff(half.density(), Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_THROW(half.trace_out({7}), std::invalid_argument);
}

TEST(RandomStream, DeterministicAndIndependentChildren) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());

  const RandomStream master(42);
  EXPECT_EQ(master.derive(3).seed(), master.derive(3).seed());
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(master.derive(i).seed());
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(master.derive(5).name(), "main/5");

  RandomStream u(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_LT(u.uniform_index(3), 3u);
  }
}

TEST(RandomStream, HaarSamplesAreUnitaryAndNormalized) {
  RandomStream rng(43);
  for (int d : {2, 4, 8}) {
    EXPECT_TRUE(is_unitary(haar_unitary(d, rng), 1e-12));
    EXPECT_NEAR(haar_vector(d, rng).norm(), 1.0, 1e-14);
  }
}

}  // namespace
}  // namespace pseudosep
