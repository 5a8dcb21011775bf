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

#ifndef ACSTAB_CLI_CONFIG_HPP
#define ACSTAB_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <string_view>

#include "acstab/field.hpp"
#include "acstab/nonlinear.hpp"
#include "acstab/schemes.hpp"

namespace acstab::cli {

/// Everything a command may read. Unset optionals mean "not supplied"; each
/// command decides which of them it requires. JSON config files use these
/// field names, with newton_tol / newton_max_iter nested as newton.tol and
/// newton.max_iter.
struct RunConfig {
  std::optional<std::string> scheme;
  double eps = 0.1;
  std::optional<double> dt;
  std::optional<double> ratio;
  int dim = 1;
  std::optional<int> n;
  std::optional<int> steps;
  std::optional<double> k;
  std::optional<double> l;
  double delta0 = 1e-3;
  std::optional<double> delta1;
  int count = 4;
  std::string out;
  bool check = false;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;

  // analysis inputs
  std::optional<double> c;
  std::optional<double> r;
  double rmin = 0.0;
  double rmax = 4.0;
  int samples = 64;
  double eps_min = 1e-3;
  double settle_tol = 1e-3;

  /// Checks the invariants every command shares: positive numerics, a known
  /// scheme tag, dt and ratio not both present. Throws ConfigError.
  void validate() const;

  SchemeKind scheme_kind() const;  // requires scheme
  /// eps together with dt, or with dt derived from ratio (dt = 2 ratio eps^2,
  /// or 4 ratio eps^2 for dirk2). Requires exactly one of the two.
  ACParams params(const SchemeKind& kind) const;
  /// ratio, or the ratio implied by dt and eps.
  double step_ratio(const SchemeKind& kind) const;
  int points() const;
  NewtonConfig newton() const;
};

/// Overlays values from a JSON object onto `cfg`. Unknown keys and mistyped
/// values raise ConfigError.
void apply_json(RunConfig& cfg, std::string_view json_text);
void apply_json_file(RunConfig& cfg, const std::string& path);

/// "const:<v>" or "const+mode:<v>,<delta>,<k[,l]>". Mode numbers may be
/// integers or halves (0.5 selects a sine factor).
struct FieldSpec {
  double value = 0.0;
  double delta = 0.0;
  std::optional<ModeIndex> mode;

  ScalarField build(const GridSpec& grid) const;
};

FieldSpec parse_field_spec(std::string_view text);

/// Mode built from k (and l) given as integers or halves.
ModeIndex mode_from(double k, std::optional<double> l);

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_CONFIG_HPP
