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
#include <iosfwd>
#include <string>

#include "pseudosep/identities.hpp"
#include "pseudosep/protocol.hpp"
#include "pseudosep/stats.hpp"

namespace pseudosep::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Output fidelity below this counts as a protocol failure.
inline constexpr double kFidelityFloor = 1.0 - 1e-10;

int cmd_verify(const IdentitySuiteOptions& options, bool json, std::ostream& out,
               std::ostream& err);

int cmd_simulate(const std::string& gate, InputKind state, const ProtocolConfig& cfg, bool json,
                 std::ostream& out, std::ostream& err);

int cmd_stats(const std::string& gate, std::size_t runs, InputKind state,
              const ProtocolConfig& cfg, unsigned workers, bool json, std::ostream& out,
              std::ostream& err);

int cmd_run(const std::string& path, const ProtocolConfig& cfg, bool json, std::ostream& out,
            std::ostream& err);

/// Full command line: verify | simulate <gate> | stats <gate> | run <path>.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudosep::cli
