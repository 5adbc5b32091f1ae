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

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pseudosep/circuit.hpp"

namespace pseudosep {
namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_circuit(text);
  } catch (const CircuitParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line " + std::to_string(e.line()) + ":", 0), 0u);
    return e.line();
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return 0;
}

TEST(ParseCircuit, BellCircuit) {
  const ParsedCircuit c = parse_circuit("H 0\nCNOT 0 1\n");
  ASSERT_EQ(c.ops.size(), 2u);
  EXPECT_EQ(c.ops[0].gate.kind(), GateKind::H);
  EXPECT_EQ(c.ops[0].qubits, (Labels{0}));
  EXPECT_EQ(c.ops[1].gate.kind(), GateKind::CNOT);
  EXPECT_EQ(c.ops[1].qubits, (Labels{0, 1}));
  EXPECT_EQ(c.num_qubits, 2u);
}

TEST(ParseCircuit, EmptyAndCommentOnly) {
  EXPECT_TRUE(parse_circuit("").ops.empty());
  EXPECT_EQ(parse_circuit("").num_qubits, 1u);
  EXPECT_TRUE(parse_circuit("# nothing\n\n   \n").ops.empty());
}

TEST(ParseCircuit, CommentsWhitespaceAndLineEndings) {
  const ParsedCircuit c =
      parse_circuit("\xEF\xBB\xBF# header\r\n  T 3   # trailing\r\n\r\nX 1\r\nY\t2\nZ 0");
  ASSERT_EQ(c.ops.size(), 4u);
  EXPECT_EQ(c.ops[0].gate.kind(), GateKind::T);
  EXPECT_EQ(c.ops[3].gate.kind(), GateKind::PauliZ);
  EXPECT_EQ(c.num_qubits, 4u);
}

TEST(ParseCircuit, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("CNOT 0 0\n"), 1u);
  EXPECT_EQ(error_line("H 0\n\nCNOT 2 2\n"), 3u);
  EXPECT_EQ(error_line("H 4\n"), 1u);
  EXPECT_EQ(error_line("H -1\n"), 1u);
  EXPECT_EQ(error_line("H 0\nS 1\n"), 2u);
  EXPECT_EQ(error_line("h 0\n"), 1u);
  EXPECT_EQ(error_line("H\n"), 1u);
  EXPECT_EQ(error_line("H 0 1\n"), 1u);
  EXPECT_EQ(error_line("CNOT 1\n"), 1u);
  EXPECT_EQ(error_line("H 0x1\n"), 1u);
  EXPECT_EQ(error_line("# ok\r\nT 1.5\r\n"), 2u);
}

TEST(LoadCircuitFile, ReadsFileAndReportsMissing) {
  const std::string path = testing::TempDir() + "pseudosep_circuit.txt";
  {
    std::ofstream out(path);
    out << "H 0\nCNOT 0 2\n";
  }
  const ParsedCircuit c = load_circuit_file(path);
  EXPECT_EQ(c.ops.size(), 2u);
  EXPECT_EQ(c.num_qubits, 3u);
  std::remove(path.c_str());
  EXPECT_THROW(load_circuit_file(path), std::runtime_error);
}

}  // namespace
}  // namespace pseudosep
