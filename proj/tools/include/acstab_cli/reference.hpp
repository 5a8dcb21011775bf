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

#ifndef ACSTAB_CLI_REFERENCE_HPP
#define ACSTAB_CLI_REFERENCE_HPP

#include <string>
#include <vector>

#include "acstab/schemes.hpp"

namespace acstab::cli {

/// Published interval points, three decimals as printed, one row per ratio.
struct IntervalReference {
  std::string id;  // table1, table2, table3
  SchemeKind scheme;
  std::vector<double> ratios;
  /// Row values in boundary order: r_1..r_4, or r_1, s_1, ..., r_4, s_4.
  std::vector<std::vector<double>> values;
  int count = 4;  // entries per family
};

const IntervalReference& interval_reference(const std::string& id);

/// Published step-size bounds as formula text and multiple of eps^2.
struct ThresholdReference {
  std::string scheme;
  std::string formula;
  double eps2_multiple;
};

const std::vector<ThresholdReference>& threshold_reference();

/// |computed - printed| <= 1e-3 * max(1, |printed|).
bool matches_printed(double computed, double printed);

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_REFERENCE_HPP
