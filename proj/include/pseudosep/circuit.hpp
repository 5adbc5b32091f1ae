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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pseudosep/protocol.hpp"

namespace pseudosep {

/// Circuit file error carrying the 1-based line number.
class CircuitParseError : public std::runtime_error {
 public:
  CircuitParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedCircuit {
  std::vector<CircuitOp> ops;
  /// One more than the largest qubit index used; 1 for an empty circuit.
  std::size_t num_qubits = 1;
};

/// Parses lines "H q", "T q", "X q", "Y q", "Z q", "CNOT qc qt" with qubit
/// indices in [0, 3]. '#' starts a comment; blank lines are ignored; LF and
/// CRLF line endings are both accepted.
ParsedCircuit parse_circuit(std::string_view text);

ParsedCircuit load_circuit_file(const std::string& path);

}  // namespace pseudosep
