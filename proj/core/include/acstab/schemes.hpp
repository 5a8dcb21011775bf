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

#ifndef ACSTAB_SCHEMES_HPP
#define ACSTAB_SCHEMES_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "acstab/field.hpp"
#include "acstab/nonlinear.hpp"

namespace acstab {

enum class SchemeTag { BE, CN, MODCN, DIRK };

struct SchemeKind {
  SchemeTag tag = SchemeTag::BE;
  ButcherTableau tableau;  // DIRK only

  static SchemeKind be() { return {SchemeTag::BE, {}}; }
  static SchemeKind cn() { return {SchemeTag::CN, {}}; }
  static SchemeKind modcn() { return {SchemeTag::MODCN, {}}; }
  static SchemeKind dirk(ButcherTableau tab = ButcherTableau::dirk2());

  /// Accepts be, cn, modcn, dirk2 (case-insensitive).
  static SchemeKind parse(std::string_view name);
  /// "be", "cn", "modcn" or "dirk2".
  std::string name() const;
  void validate() const;
};

/// How the first Newton iterate of a step is formed.
enum class GuessPolicy {
  kPrevious,      // phi^n (stage i starts from stage i-1)
  kForwardEuler,  // phi^n + dt * F(phi^n)
};

struct StepOptions {
  StepOptions() = default;
  StepOptions(const NewtonConfig& cfg) : newton(cfg) {}  // NOLINT(google-explicit-constructor)

  NewtonConfig newton;
  GuessPolicy guess = GuessPolicy::kPrevious;
};

struct StepReport {
  std::vector<NewtonReport> stages;
  bool success = false;
  std::string diagnostic;
};

struct StepResult {
  ScalarField next;
  StepReport report;
  std::vector<ScalarField> stages;  // DIRK stage values phi_1..phi_s
};

/// Residual R(next, prev) of a two-level scheme and its partial Jacobians.
struct TwoLevelEquation {
  std::function<Vector(const Vector& next, const Vector& prev)> residual;
  std::function<SparseMatrix(const Vector& next, const Vector& prev)> d_next;
  std::function<SparseMatrix(const Vector& next, const Vector& prev)> d_prev;
};

/// BE, CN or MODCN step equation on `grid`. Throws ConfigError for DIRK.
TwoLevelEquation two_level_equation(SchemeTag tag, const GridSpec& grid, const ACParams& p);

/// DIRK stage equation phi - base - dt * a_ii * F(phi) = 0.
HomotopyProblem dirk_stage_problem(const GridSpec& grid, const ACParams& p, double a_ii,
                                   Vector base);

StepResult be_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt = {});
StepResult cn_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt = {});
StepResult modcn_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt = {});
StepResult dirk_step(const ScalarField& phi_n, const ButcherTableau& tab, const ACParams& p,
                     const StepOptions& opt = {});
StepResult step(const SchemeKind& kind, const ScalarField& phi_n, const ACParams& p,
                const StepOptions& opt = {});

struct StepSummary {
  int step = 0;
  double time = 0.0;
  double min = 0.0;
  double max = 0.0;
  double center = 0.0;
  double l2 = 0.0;
};

struct Trajectory {
  std::vector<StepSummary> summaries;  // index 0 is the initial state
  std::vector<ScalarField> snapshots;  // only when requested
  // Full-field settling: from settle_step on, |phi - limit_sign|_inf <= settle_tol.
  bool settled = false;
  int settle_step = -1;
  int limit_sign = 0;
  // Same notion measured on the centre node only.
  int center_settle_step = -1;
  int center_limit_sign = 0;
  bool failed = false;
  std::string diagnostic;

  int steps_taken() const { return static_cast<int>(summaries.size()) - 1; }
  /// Number of sign changes of the centre value along the trajectory,
  /// including the change from the initial state.
  int center_sign_changes() const;
};

struct SimulateOptions {
  double settle_tol = 1e-3;
  bool keep_snapshots = false;
  StepOptions step;
};

Trajectory simulate(const SchemeKind& kind, const ScalarField& phi0, int steps, const ACParams& p,
                    const SimulateOptions& opt = {});

struct ScalarImage {
  double value = 0.0;
  bool selected = false;
};

/// All real constant states reachable in one step from the constant r,
/// ascending. The entry a Newton iteration started at r converges to is
/// marked selected.
std::vector<ScalarImage> scalar_map(const SchemeKind& kind, double r, const ACParams& p);

/// The selected image of scalar_map, or NaN when the Newton path fails.
double scalar_step(const SchemeKind& kind, double r, const ACParams& p);

}  // namespace acstab

#endif  // ACSTAB_SCHEMES_HPP
