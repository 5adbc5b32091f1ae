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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace pseudosep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Qubit identifiers are plain integers; the order of a label list fixes the
// tensor-factor order (first label is the most significant bit of a basis
// index).
using QubitId = int;
using Labels = std::vector<QubitId>;

// Structural checks: projector-ness, completeness, normalization.
inline constexpr double kStructuralTol = 1e-10;
// Exact algebraic identities.
inline constexpr double kIdentityTol = 1e-12;
// Distance below which a dense operator is snapped to a phased Pauli.
inline constexpr double kPauliSnapTol = 1e-10;

inline constexpr std::size_t kMaxQubits = 8;

/// Largest entry modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& u, double tol = kStructuralTol);

Matrix dagger(const Matrix& m);

}  // namespace pseudosep
