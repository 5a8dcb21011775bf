// Copyright 2026 The acstab Authors.
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

#ifndef ACSTAB_CLI_COMMANDS_HPP
#define ACSTAB_CLI_COMMANDS_HPP

#include <ostream>
#include <string>

#include "acstab_cli/config.hpp"

namespace acstab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitMismatch = 4,
};

// Each command writes CSV to `out` and human-readable notes to `log`, and
// returns kExitOk, kExitSolver or kExitMismatch. Bad input surfaces as
// ConfigError; broken analysis invariants as AnalysisError.

/// id: table1..table4, fig1-data, fig5-data.
int cmd_reproduce(const std::string& id, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// initial: a field spec (see parse_field_spec).
int cmd_simulate(const RunConfig& cfg, const std::string& initial, std::ostream& out, std::ostream& log);

/// what: thresholds, bifurcations, intervals, classify, perturb.
int cmd_analyze(const std::string& what, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// target: a field spec. Constants list every real preimage; fields are
/// continued in delta from a constant preimage.
int cmd_preimage(const RunConfig& cfg, const std::string& target, std::ostream& out, std::ostream& log);

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_COMMANDS_HPP
