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

#ifndef ACSTAB_STABILITY_HPP
#define ACSTAB_STABILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "acstab/field.hpp"
#include "acstab/schemes.hpp"

namespace acstab {

enum class ThresholdFormula { kEps2, kTwoEps2, kInfinite, kEps2OverMaxDiagonal };

std::string to_string(ThresholdFormula f);

/// Largest step size for which the next step is unique.
struct StabilityThreshold {
  SchemeKind scheme;
  double dt_max = 0.0;  // +inf for unconditionally stable schemes
  ThresholdFormula formula = ThresholdFormula::kEps2;
  /// dt_max / eps^2 (1, 2, inf, 1/max a_ii).
  double eps2_multiple = 0.0;
};

StabilityThreshold stability_threshold(const SchemeKind& kind, double eps);

/// Helmholtz coefficient of the homogeneous linearised step equation at the
/// constant state c. A nonnegative value means only the trivial solution
/// exists, so the step is unique there.
///
/// DIRK needs the diagonal entry `stage_a` of the stage being solved; MODCN
/// needs the current constant `r` as well as the next constant `c`.
/// Throws ConfigError when a required argument is missing.
double uniqueness_coefficient(const SchemeKind& kind, double c, const ACParams& p,
                              std::optional<double> stage_a = std::nullopt,
                              std::optional<double> r = std::nullopt);

/// eps^2 at which mode k bifurcates from the constant state c, or nullopt when
/// 1 - 3c^2 <= 0 (and always for MODCN, which never bifurcates). For DIRK a
/// missing stage_a defaults to the tableau's largest diagonal entry.
std::optional<double> bifurcation_epsilon_sq(const SchemeKind& kind, double c, double dt,
                                             const ModeIndex& k,
                                             std::optional<double> stage_a = std::nullopt);

struct BifurcationPoint {
  double eps_sq = 0.0;
  ModeIndex mode;
  double c = 0.0;
  std::string scheme;
  std::string eigenfunction;
  /// Set for CN modes with a k_i = 1/2 sine factor. These follow from the
  /// same Helmholtz argument as BE but are less firmly established for CN.
  bool ambiguous = false;
};

/// All modes with 2k_i in {0..2*max_k} whose bifurcating eps^2 >= eps_min^2,
/// sorted by descending eps^2.
std::vector<BifurcationPoint> enumerate_bifurcations(const SchemeKind& kind, double c, double dt,
                                                     double eps_min, int max_k, int dim,
                                                     std::optional<double> stage_a = std::nullopt);

}  // namespace acstab

#endif  // ACSTAB_STABILITY_HPP
