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

#ifndef ACSTAB_ROBUSTNESS_HPP
#define ACSTAB_ROBUSTNESS_HPP

#include <cstddef>
#include <vector>

#include "acstab/cubic.hpp"
#include "acstab/field.hpp"
#include "acstab/nonlinear.hpp"
#include "acstab/schemes.hpp"

namespace acstab {

/// One branch of the DIRK backward chain: phi_0 and its stage values.
struct StageChain {
  double phi0 = 0.0;
  std::vector<double> stages;  // phi_1 .. phi_s
  std::size_t cubic = 0;       // index into PreimageSet::cubics of the last cubic solved
};

/// Every real constant r that the scheme maps to the constant c.
struct PreimageSet {
  SchemeKind scheme;
  double target = 0.0;
  std::vector<double> roots;         // ascending; CN/MODCN keep multiplicity, DIRK is deduplicated
  std::vector<CubicRoots> cubics;    // every cubic solved on the way
  std::vector<StageChain> chains;    // DIRK only, one per root
};

/// Backward constant analysis. BE is linear in phi^n (single root); CN and
/// MODCN solve one cubic; DIRK chains one cubic per stage backwards from c and
/// requires a two-stage tableau with b_1 = a_21 and a_11 != 0.
PreimageSet preimage_constants(const SchemeKind& kind, double c, const ACParams& p);

/// Ordered thresholds partitioning initial constants by eventual limit.
struct IntervalSequence {
  SchemeKind scheme;
  double ratio = 0.0;       // dt/(2 eps^2) for CN/MODCN, dt/(4 eps^2) for DIRK
  std::vector<double> r;    // r_1, r_2, ...
  std::vector<double> s;    // s_1, s_2, ... (DIRK only)

  /// r and s merged in ascending order (r_1, s_1, r_2, s_2, ... for DIRK).
  std::vector<double> boundaries() const;
};

/// Parameters realising a ratio: eps = 1 and dt = 2*ratio (CN/MODCN) or
/// 4*ratio (DIRK). Constant-state analysis depends on the ratio only.
ACParams params_for_ratio(const SchemeKind& kind, double ratio);

/// Builds `count` entries per family. Throws AnalysisError when a cubic that
/// must have a single real root does not.
IntervalSequence interval_sequence(const SchemeKind& kind, double ratio, int count);

struct ClassificationResult {
  double r = 0.0;
  std::vector<int> signs;     // sign after each step
  std::vector<double> values; // constant after each step
  int settle_step = -1;       // first step from which |value - limit| <= settle_tol
  int limit_sign = 0;         // 0 when undetermined

  int sign_changes() const;
};

/// Iterates the selected branch of scalar_map starting from r.
ClassificationResult classify_constant_initial(const SchemeKind& kind, double r, const ACParams& p,
                                               int max_steps, double settle_tol = 1e-3);

struct PerturbationGain {
  SchemeKind scheme;
  double c = 0.0;
  double r = 0.0;
  ModeIndex mode;
  std::vector<double> values;  // {B} or {B2, B1, B0}
  bool pole = false;           // a denominator vanished; values are NaN
};

/// Linear response B of the previous step to a mode perturbation of the next
/// step around the constant pair (r -> c). CN and MODCN only.
PerturbationGain perturbation_gain(const SchemeKind& kind, double c, double r, const ModeIndex& k,
                                   const ACParams& p);

/// Stagewise gains (B2, B1, B0) of the bundled two-stage DIRK array around the
/// stage constants c2 (phi_2) and c1 (phi_1).
PerturbationGain dirk_perturbation_gains(double c2, double c1, const ModeIndex& k,
                                         const ACParams& p);

struct PreimageFieldResult {
  ScalarField phi_n;
  NewtonReport report;
  bool completed = false;
  double last_good_delta = 0.0;
  ScalarField target;             // c + last_good_delta * shape
  double forward_residual = 0.0;  // |step(phi_n) - target|_inf
  std::vector<ScalarField> stages;
};

/// Solves step(phi^n) = c + delta * shape for phi^n by Newton continuation in
/// delta, starting from `seed` at delta_start.
PreimageFieldResult preimage_field(const SchemeKind& kind, double c, const ScalarField& shape,
                                   const ScalarField& seed, const ACParams& p,
                                   const HomotopyConfig& hcfg, const NewtonConfig& ncfg = {});

}  // namespace acstab

#endif  // ACSTAB_ROBUSTNESS_HPP
