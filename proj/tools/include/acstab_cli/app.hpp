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

#ifndef ACSTAB_CLI_APP_HPP
#define ACSTAB_CLI_APP_HPP

#include <ostream>

namespace acstab::cli {

/// Full command-line entry point: parses argv, merges --config with flags
/// (flags win), runs the command and maps failures onto the exit-code
/// contract. CSV goes to --out when given, otherwise to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_APP_HPP
