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

#include "pseudosep/identities.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "pseudosep/measure.hpp"
#include "pseudosep/pauli.hpp"
#include "pseudosep/qcore.hpp"

namespace pseudosep {

bool IdentityReport::all_passed() const { return passed_count() == checks.size(); }

std::size_t IdentityReport::passed_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) {
    n += c.passed ? 1 : 0;
  }
  return n;
}

std::size_t IdentityReport::count_with_prefix(const std::string& prefix, bool only_passed) const {
  std::size_t n = 0;
  for (const auto& c : checks) {
    if (c.name.rfind(prefix, 0) == 0 && (!only_passed || c.passed)) {
      ++n;
    }
  }
  return n;
}

namespace {

constexpr double kMismatch = INFINITY;

class Suite {
 public:
  explicit Suite(double tol) { report_.tolerance = tol; }

  void add(std::string name, double deviation) {
    report_.checks.push_back(
        {std::move(name), deviation, std::isfinite(deviation) && deviation <= report_.tolerance});
  }
  void add(std::string name, const Matrix& actual, const Matrix& expected) {
    add(std::move(name), actual.rows() == expected.rows() && actual.cols() == expected.cols()
                             ? max_abs_diff(actual, expected)
                             : kMismatch);
  }

  IdentityReport take() { return std::move(report_); }

 private:
  IdentityReport report_;
};

Matrix pp(const char* text) { return PhasedPauli::parse(text).matrix(); }

std::string idx(int a) { return "[" + std::to_string(a) + "]"; }
std::string idx(int a, int b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

PseudoseparateForm xor_form(std::initializer_list<SingleQubitBinary> parts, Labels targets) {
  const int n = static_cast<int>(parts.size());
  return PseudoseparateForm(BalancedBooleanFn::parity(n), parts, std::move(targets));
}

double form_deviation(const BinaryMeasurement& m, const PseudoseparateForm& expected) {
  const BinaryMeasurement e = expand_f_separate(expected);
  if (e.support() != m.support()) {
    return kMismatch;
  }
  return std::max(max_abs_diff(m.p0(), e.p0()), max_abs_diff(m.p1(), e.p1()));
}

void pauli_products(Suite& s) {
  for (Pauli a : kAllPaulis) {
    for (Pauli b : kAllPaulis) {
      const auto [phase, k] = pauli_product(a, b);
      const int i = index_of(a);
      const int j = index_of(b);
      // Index rule: [0,j] = j, [i,i] = 0, otherwise the remaining index.
      const int rule = i == 0 ? j : (j == 0 ? i : (i == j ? 0 : 6 - i - j));
      const double dev =
          index_of(k) == rule
              ? max_abs_diff(pauli_matrix(a) * pauli_matrix(b), phase.value() * pauli_matrix(k))
              : kMismatch;
      s.add("pauli.product" + idx(i, j), dev);
    }
  }
}

void bell_projectors(Suite& s, const std::array<int, 3>& gamma) {
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix xx = pp("XX");
  const Matrix yy = pp("YY");
  const Matrix zz = pp("ZZ");
  const Vector epr = epr_state().amplitudes();
  s.add("bell.epr_projector", epr * epr.adjoint(), (id + xx - yy + zz) / 4.0);
  // Signs of (XX, YY, ZZ) in 4|B_j><B_j|.
  constexpr int kSigns[4][3] = {{1, -1, 1}, {1, 1, -1}, {-1, -1, -1}, {-1, 1, 1}};
  for (int j = 0; j < 4; ++j) {
    const Matrix expected =
        (id + kSigns[j][0] * xx + kSigns[j][1] * yy + kSigns[j][2] * zz) / 4.0;
    s.add("bell.projector" + idx(j), bell_projector(pauli_from_index(j)), expected);
  }
  for (int i = 1; i <= 3; ++i) {
    const Pauli p = pauli_from_index(i);
    const Matrix ii = PhasedPauli({p, p}).matrix();
    const Matrix expected = (id + gamma[i - 1] * ii) / 2.0;
    const std::string name = "Q" + std::to_string(i);
    s.add(name, bell_projector(Pauli::I) + bell_projector(p), expected);
    const BinaryMeasurement m =
        expand_f_separate(solve_two_qubit_parity_form(p, Matrix::Identity(2, 2)));
    s.add(name + ".xor_form", m.p0(), expected);
  }
}

void conjugation_tables(Suite& s) {
  const Matrix h = hadamard_matrix();
  const Matrix t = t_matrix();
  const std::array<const char*, 3> h_table = {"Z", "-Y", "X"};
  for (int j = 1; j <= 3; ++j) {
    const Matrix& sj = pauli_matrix(pauli_from_index(j));
    s.add("H.conj" + idx(j), h * sj * h.adjoint(), pp(h_table[j - 1]));
  }
  const Complex i(0, 1);
  const Complex w = std::polar(1.0, std::numbers::pi / 4.0);
  Matrix t1(2, 2);
  t1 << 0, std::conj(w), w, 0;
  Matrix t2(2, 2);
  t2 << 0, -i * std::conj(w), i * w, 0;
  const std::array<Matrix, 3> t_table = {t1, t2, pp("Z")};
  std::array<Matrix, 3> t_level1;
  for (int j = 1; j <= 3; ++j) {
    const Matrix& sj = pauli_matrix(pauli_from_index(j));
    t_level1[j - 1] = t * sj * t.adjoint();
    s.add("T.conj" + idx(j), t_level1[j - 1], t_table[j - 1]);
  }
  const std::array<std::array<const char*, 3>, 2> t_level2 = {{{"Y", "X", "-Z"}, {"-Y", "-X", "-Z"}}};
  for (int j = 1; j <= 2; ++j) {
    const Matrix& tj = t_level1[j - 1];
    for (int k = 1; k <= 3; ++k) {
      const Matrix& sk = pauli_matrix(pauli_from_index(k));
      s.add("T.conj" + idx(j, k), tj * sk * tj.adjoint(), pp(t_level2[j - 1][k - 1]));
    }
  }
}

void catalogue(Suite& s) {
  const Complex i(0, 1);
  const Complex w = std::polar(1.0, std::numbers::pi / 4.0);
  Matrix x0(2, 2), y0(2, 2), z0(2, 2), w0(2, 2);
  x0 << 0.5, 0.5, 0.5, 0.5;
  y0 << 0.5, -0.5 * i, 0.5 * i, 0.5;
  z0 << 1, 0, 0, 0;
  w0 << 0.5, 0.5 * std::conj(w), 0.5 * w, 0.5;
  s.add("catalogue.X0", SingleQubitBinary::X().p0(), x0);
  s.add("catalogue.Y0", SingleQubitBinary::Y().p0(), y0);
  s.add("catalogue.Z0", SingleQubitBinary::Z().p0(), z0);
  s.add("catalogue.W0", SingleQubitBinary::W().p0(), w0);
  const Matrix h = hadamard_matrix();
  Matrix ket0 = Matrix::Zero(2, 2);
  ket0(0, 0) = 1;
  s.add("catalogue.X0=H|0><0|H", h * ket0 * h, x0);
  const Matrix t = t_matrix();
  const Matrix t1 = t * pp("X") * t.adjoint();
  s.add("catalogue.W0=(I+T1)/2", (Matrix::Identity(2, 2) + t1) / 2.0, w0);
}

void recipes(Suite& s) {
  const auto X = SingleQubitBinary::X();
  const auto Y = SingleQubitBinary::Y();
  const auto Z = SingleQubitBinary::Z();
  const auto W = SingleQubitBinary::W();
  const Matrix t = t_matrix();
  const Matrix t1 = t * pp("X") * t.adjoint();
  const Matrix t2 = t * pp("Y") * t.adjoint();
  struct Recipe {
    const char* name;
    Matrix u;
    PseudoseparateForm first;
    PseudoseparateForm second;
  };
  const std::vector<Recipe> table = {
      {"bell", Matrix::Identity(2, 2), xor_form({X, X}, {0, 1}), xor_form({Z, Z}, {0, 1})},
      {"X", pp("X"), xor_form({X, X}, {0, 1}), xor_form({Z, Z.swapped()}, {0, 1})},
      {"Y", pp("Y"), xor_form({X, X.swapped()}, {0, 1}), xor_form({Z, Z.swapped()}, {0, 1})},
      {"Z", pp("Z"), xor_form({X, X.swapped()}, {0, 1}), xor_form({Z, Z}, {0, 1})},
      {"H", hadamard_matrix(), xor_form({X, Z}, {0, 1}), xor_form({Z, X}, {0, 1})},
      {"T", t, xor_form({X, W}, {0, 1}), xor_form({Z, Z}, {0, 1})},
      {"T1", t1, xor_form({X, Y}, {0, 1}), xor_form({Z, Z.swapped()}, {0, 1})},
      {"T2", t2, xor_form({X, Y.swapped()}, {0, 1}), xor_form({Z, Z.swapped()}, {0, 1})},
  };
  for (const Recipe& r : table) {
    const auto [first, second] = u_basis_binary_pair(r.u);
    const std::string base = std::string("recipe.") + r.name;
    s.add(base + ".first", form_deviation(first, r.first));
    s.add(base + ".second", form_deviation(second, r.second));
    const CompleteMeasurement joint = compose_binaries({first, second});
    const ProjectorMatch match =
        match_projector_sets(joint.projectors(), u_basis_measurement(r.u).projectors());
    s.add(std::string("u_basis.equivalence.") + r.name,
          match.matched ? match.max_deviation : kMismatch);
  }
}

void cnot_checks(Suite& s) {
  const Labels system = {1, 2, 3, 4};
  const auto set = cnot_measurement_set();
  const auto sums = u_pair_basis_binaries(cnot_matrix());
  const char* names[4] = {"cnot.Q01", "cnot.Q03", "cnot.R01", "cnot.R03"};
  for (int i = 0; i < 4; ++i) {
    const Matrix embedded = embed(set[i].p0(), set[i].support(), system);
    s.add(names[i], embedded, sums[i].p0());
  }
  // Closed forms: (I + XXX)/2 on (1,3,4); even z-parity of (2,3,4).
  const Matrix xxx = (Matrix::Identity(8, 8) + pp("XXX")) / 2.0;
  s.add("cnot.Q01.closed_form", set[0].p0(), xxx);
  Matrix even = Matrix::Zero(8, 8);
  for (int b = 0; b < 8; ++b) {
    if (std::popcount(static_cast<unsigned>(b)) % 2 == 0) {
      even(b, b) = 1;
    }
  }
  s.add("cnot.R03.closed_form", set[3].p0(), even);
  s.add("cnot.Q03.bell_z", set[1].p0(), bell_projector(Pauli::I) + bell_projector(Pauli::Z));
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      s.add("cnot.commute" + idx(a + 1, b + 1),
            commutator_norm(embed(set[a].p0(), set[a].support(), system),
                            embed(set[b].p0(), set[b].support(), system)));
    }
  }
  const CompleteMeasurement joint =
      compose_binaries({set[0], set[1], set[2], set[3]}, system);
  const ProjectorMatch match =
      match_projector_sets(joint.projectors(), u_pair_basis_measurement(cnot_matrix()).projectors());
  s.add("cnot.composition", match.matched ? match.max_deviation : kMismatch);

  // CNOT (sigma_j (x) sigma_k) CNOT for all 16 pairs.
  constexpr const char* kTable[4][4] = {{"II", "IX", "ZY", "ZZ"},
                                        {"XX", "XI", "YZ", "-YY"},
                                        {"YX", "YI", "-XZ", "XY"},
                                        {"ZI", "ZX", "IY", "IZ"}};
  const Matrix u = cnot_matrix();
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const Pauli pj = pauli_from_index(j);
      const Pauli pk = pauli_from_index(k);
      const Matrix expected = pp(kTable[j][k]);
      const Matrix direct = u * PhasedPauli({pj, pk}).matrix() * u;
      const CnotFrame frame = cnot_frame_update(pj, pk);
      const Matrix symbolic = PhasedPauli(frame.phase, {frame.control, frame.target}).matrix();
      s.add("cnot.conj" + idx(j, k),
            std::max(max_abs_diff(direct, expected), max_abs_diff(symbolic, expected)));
    }
  }
}

}  // namespace

IdentityReport run_identity_suite(const IdentitySuiteOptions& options) {
  Suite s(options.tolerance);
  pauli_products(s);
  bell_projectors(s, options.gamma);
  conjugation_tables(s);
  catalogue(s);
  recipes(s);
  cnot_checks(s);
  return s.take();
}

}  // namespace pseudosep
