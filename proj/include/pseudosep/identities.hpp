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
#include <string>
#include <vector>

#include "pseudosep/types.hpp"

namespace pseudosep {

struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  bool passed = false;
};

struct IdentityReport {
  double tolerance = kIdentityTol;
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  std::size_t passed_count() const;
  std::size_t count_with_prefix(const std::string& prefix, bool only_passed) const;
};

struct IdentitySuiteOptions {
  double tolerance = kIdentityTol;
  /// Parity signs of |B0><B0| + |Bi><Bi| = (I + g_i sigma_i (x) sigma_i)/2.
  /// Overridable so a corrupted vector can serve as a negative control.
  std::array<int, 3> gamma = {1, -1, 1};
};

/// Every exact identity the measurement catalogue rests on, each checked
/// numerically against its literal closed form:
///   pauli.product[i,j]     sigma_i sigma_j = phase sigma_[i,j]
///   bell.*                 Bell projector expansions in Pauli products
///   Q1..Q3, Qi.xor_form    Bell-pair parity projectors and their xor forms
///   H.conj, T.conj         one-qubit conjugation tables, two levels for T
///   catalogue.*            the X0, Y0, Z0, W0 projectors
///   recipe.*               per-gate preparation measurements
///   u_basis.*              binary-pair composition equals the |U_j> basis
///   cnot.*                 C-NOT binary set, composition, conjugation table
IdentityReport run_identity_suite(const IdentitySuiteOptions& options = {});

}  // namespace pseudosep
