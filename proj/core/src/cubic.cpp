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

#include "acstab/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acstab/field.hpp"

namespace acstab {
namespace {

constexpr double kRepeatedRootTol = 1e-12;
// Roots whose whole spread is below this fraction of their centre are one
// (numerically triple) root.
constexpr double kClusterTol = 1e-5;

double root_bound(double b, double c, double d) {
  return std::max({std::abs(b), std::sqrt(std::abs(c)), std::cbrt(std::abs(d))});
}

// One Newton step on the monic cubic, kept only if it lowers the residual.
double polish(double b, double c, double d, double x) {
  const double f = eval_cubic(1.0, b, c, d, x);
  const double df = (3.0 * x + 2.0 * b) * x + c;
  if (df == 0.0) return x;
  const double next = x - f / df;
  return std::abs(eval_cubic(1.0, b, c, d, next)) < std::abs(f) ? next : x;
}

}  // namespace

double cubic_scale(double a3, double a2, double a1, double a0) {
  if (a3 == 0.0) throw ConfigError("cubic leading coefficient must be nonzero");
  const double bound = root_bound(a2 / a3, a1 / a3, a0 / a3);
  const double r = std::max(bound, 1.0);
  return std::abs(a3) * r * r * r + std::abs(a2) * r * r + std::abs(a1) * r + std::abs(a0);
}

CubicRoots real_cubic_roots(double a3, double a2, double a1, double a0) {
  if (a3 == 0.0) throw ConfigError("cubic leading coefficient must be nonzero");
  const double b = a2 / a3;
  const double c = a1 / a3;
  const double d = a0 / a3;

  // x = t + shift removes the quadratic term: t^3 + p t + q.
  const double shift = -b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

  CubicRoots out;
  out.discriminant = -4.0 * p * p * p - 27.0 * q * q;

  // Normalise by the spread of the roots about their centre so the
  // repeated-root test compares separations with that spread.
  const double spread = std::max(std::sqrt(std::abs(p)), std::cbrt(std::abs(q)));
  std::vector<double> ts;
  if (spread <= kClusterTol * std::max(1.0, std::abs(shift))) {
    out.discriminant_sign = 0;
    ts = {0.0, 0.0, 0.0};
  } else {
    const double ps = p / (spread * spread);
    const double qs = q / (spread * spread * spread);
    const double disc = -4.0 * ps * ps * ps - 27.0 * qs * qs;
    out.discriminant_sign = std::abs(disc) <= kRepeatedRootTol ? 0 : (disc > 0.0 ? 1 : -1);
    if (out.discriminant_sign > 0) {
      const double m = 2.0 * std::sqrt(-ps / 3.0);
      const double arg = std::clamp(3.0 * qs / (2.0 * ps) * std::sqrt(-3.0 / ps), -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) {
        ts.push_back(spread * m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
      }
    } else if (out.discriminant_sign == 0) {
      // double root: t = 3q/p once and -3q/(2p) twice
      ts = {spread * 3.0 * qs / ps, spread * -1.5 * qs / ps, spread * -1.5 * qs / ps};
    } else {
      const double disc_dep = qs * qs / 4.0 + ps * ps * ps / 27.0;
      const double mag = std::cbrt(std::abs(qs) / 2.0 + std::sqrt(std::max(disc_dep, 0.0)));
      const double a = qs > 0.0 ? -mag : mag;
      ts.push_back(spread * (a == 0.0 ? 0.0 : a - ps / (3.0 * a)));
    }
  }

  out.real_roots.reserve(ts.size());
  for (double t : ts) out.real_roots.push_back(polish(b, c, d, t + shift));
  std::sort(out.real_roots.begin(), out.real_roots.end());
  return out;
}

}  // namespace acstab
