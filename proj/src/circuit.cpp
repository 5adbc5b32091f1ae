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

#include "pseudosep/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pseudosep {

CircuitParseError::CircuitParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) {
      words.push_back(line.substr(start, pos - start));
    }
  }
  return words;
}

QubitId parse_qubit(std::string_view word, std::size_t line) {
  int value = -1;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw CircuitParseError(line, "bad qubit index '" + std::string(word) + "'");
  }
  if (value < 0 || value >= static_cast<int>(kMaxLogicalQubits)) {
    throw CircuitParseError(line, "qubit index " + std::to_string(value) + " outside [0, " +
                                      std::to_string(kMaxLogicalQubits - 1) + "]");
  }
  return value;
}

}  // namespace

ParsedCircuit parse_circuit(std::string_view text) {
  ParsedCircuit circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  QubitId highest = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line);
    if (words.empty()) {
      continue;
    }
    const std::string_view name = words[0];
    GateSpec gate = GateSpec::h();
    if (name == "H" || name == "T" || name == "X" || name == "Y" || name == "Z" ||
        name == "CNOT") {
      gate = GateSpec::from_name(name);
    } else {
      throw CircuitParseError(line_no, "unknown gate '" + std::string(name) + "'");
    }
    const std::size_t want = static_cast<std::size_t>(gate.arity());
    if (words.size() - 1 != want) {
      throw CircuitParseError(line_no, std::string(name) + " takes " + std::to_string(want) +
                                           " qubit index(es), got " +
                                           std::to_string(words.size() - 1));
    }
    Labels qubits;
    for (std::size_t i = 1; i < words.size(); ++i) {
      qubits.push_back(parse_qubit(words[i], line_no));
      highest = std::max(highest, qubits.back());
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
      throw CircuitParseError(line_no, "CNOT control and target must differ");
    }
    circuit.ops.push_back(CircuitOp{std::move(gate), std::move(qubits)});
  }
  circuit.num_qubits = static_cast<std::size_t>(highest) + 1;
  return circuit;
}

ParsedCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open circuit file " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

}  // namespace pseudosep
