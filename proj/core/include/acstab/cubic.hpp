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

#ifndef ACSTAB_CUBIC_HPP
#define ACSTAB_CUBIC_HPP

#include <vector>

namespace acstab {

/// Real roots of a3 r^3 + a2 r^2 + a1 r + a0.
struct CubicRoots {
  std::vector<double> real_roots;  // ascending, repeated roots listed with multiplicity
  int discriminant_sign = 0;       // -1: one real root, 0: repeated root, +1: three distinct
  double discriminant = 0.0;       // of the monic-normalised cubic
};

/// Closed-form real roots (trigonometric or Cardano), each polished with a
/// Newton step. Classification works on the depressed cubic rescaled to unit
/// root spread, where a discriminant below 1e-12 counts as a repeated root.
/// Throws ConfigError when a3 == 0.
CubicRoots real_cubic_roots(double a3, double a2, double a1, double a0);

/// Magnitude scale used for residual checks: sum_i |a_i| * R^i with R the
/// Cauchy-style root bound of the monic cubic.
double cubic_scale(double a3, double a2, double a1, double a0);

inline double eval_cubic(double a3, double a2, double a1, double a0, double x) {
  return ((a3 * x + a2) * x + a1) * x + a0;
}

}  // namespace acstab

#endif  // ACSTAB_CUBIC_HPP
