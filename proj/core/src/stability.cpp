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

#include "acstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace acstab {

std::string to_string(ThresholdFormula f) {
  switch (f) {
    case ThresholdFormula::kEps2: return "eps^2";
    case ThresholdFormula::kTwoEps2: return "2*eps^2";
    case ThresholdFormula::kInfinite: return "inf";
    case ThresholdFormula::kEps2OverMaxDiagonal: return "eps^2/max(a_ii)";
  }
  return "?";
}

StabilityThreshold stability_threshold(const SchemeKind& kind, double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  kind.validate();
  const double e2 = eps * eps;
  StabilityThreshold t{kind, 0.0, ThresholdFormula::kEps2, 1.0};
  switch (kind.tag) {
    case SchemeTag::BE:
      t.formula = ThresholdFormula::kEps2;
      t.eps2_multiple = 1.0;
      break;
    case SchemeTag::CN:
      t.formula = ThresholdFormula::kTwoEps2;
      t.eps2_multiple = 2.0;
      break;
    case SchemeTag::MODCN:
      t.formula = ThresholdFormula::kInfinite;
      t.eps2_multiple = std::numeric_limits<double>::infinity();
      break;
    case SchemeTag::DIRK:
      t.formula = ThresholdFormula::kEps2OverMaxDiagonal;
      t.eps2_multiple = 1.0 / kind.tableau.max_diagonal();
      break;
  }
  t.dt_max = std::isinf(t.eps2_multiple) ? t.eps2_multiple : t.eps2_multiple * e2;
  return t;
}

double uniqueness_coefficient(const SchemeKind& kind, double c, const ACParams& p,
                              std::optional<double> stage_a, std::optional<double> r) {
  p.validate();
  const double e2 = p.eps * p.eps;
  switch (kind.tag) {
    case SchemeTag::BE:
      return 1.0 / p.dt + (3.0 * c * c - 1.0) / e2;
    case SchemeTag::CN:
      return 1.0 / p.dt + (3.0 * c * c - 1.0) / (2.0 * e2);
    case SchemeTag::MODCN: {
      if (!r) throw ConfigError("MODCN uniqueness coefficient needs the current constant r");
      const double s = c + *r;
      return 1.0 / p.dt + (2.0 * c * c + s * s) / (4.0 * e2);
    }
    case SchemeTag::DIRK:
      if (!stage_a) throw ConfigError("DIRK uniqueness coefficient needs the stage diagonal a_ii");
      if (!(*stage_a > 0.0)) throw ConfigError("stage diagonal a_ii must be positive");
      return 1.0 / (p.dt * *stage_a) + (3.0 * c * c - 1.0) / e2;
  }
  throw ConfigError("unknown scheme");
}

std::optional<double> bifurcation_epsilon_sq(const SchemeKind& kind, double c, double dt,
                                             const ModeIndex& k, std::optional<double> stage_a) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const double numerator = 1.0 - 3.0 * c * c;
  if (!(numerator > 0.0)) return std::nullopt;
  double inv_time = 0.0;
  switch (kind.tag) {
    case SchemeTag::BE: inv_time = 1.0 / dt; break;
    case SchemeTag::CN: inv_time = 2.0 / dt; break;
    case SchemeTag::MODCN: return std::nullopt;
    case SchemeTag::DIRK: {
      const double a = stage_a ? *stage_a : kind.tableau.max_diagonal();
      if (!(a > 0.0)) throw ConfigError("stage diagonal a_ii must be positive");
      inv_time = 1.0 / (dt * a);
      break;
    }
  }
  return numerator / (inv_time + k.eigenvalue());
}

std::vector<BifurcationPoint> enumerate_bifurcations(const SchemeKind& kind, double c, double dt,
                                                     double eps_min, int max_k, int dim,
                                                     std::optional<double> stage_a) {
  if (!(eps_min > 0.0)) throw ConfigError("eps_min must be positive");
  if (max_k < 0) throw ConfigError("max_k must be nonnegative");
  if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
  const double floor = eps_min * eps_min;
  const int top = 2 * max_k;

  std::vector<BifurcationPoint> out;
  auto consider = [&](std::vector<int> twice) {
    ModeIndex mode = ModeIndex::from_twice(std::move(twice));
    const auto e2 = bifurcation_epsilon_sq(kind, c, dt, mode, stage_a);
    if (!e2 || *e2 < floor) return;
    bool ambiguous = false;
    if (kind.tag == SchemeTag::CN) {
      for (int axis = 0; axis < mode.dim(); ++axis) ambiguous |= mode.twice_k(axis) == 1;
    }
    out.push_back({*e2, mode, c, kind.name(), mode.descriptor(), ambiguous});
  };
  for (int i = 0; i <= top; ++i) {
    if (dim == 1) {
      consider({i});
    } else {
      for (int j = 0; j <= top; ++j) consider({i, j});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const BifurcationPoint& a, const BifurcationPoint& b) {
    return a.eps_sq > b.eps_sq;
  });
  return out;
}

}  // namespace acstab
