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

#ifndef ACSTAB_NONLINEAR_HPP
#define ACSTAB_NONLINEAR_HPP

#include <functional>
#include <string>
#include <vector>

#include "acstab/cubic.hpp"
#include "acstab/field.hpp"

namespace acstab {

struct NewtonConfig {
  double tol = 1e-10;  // residual infinity-norm
  int max_iter = 50;
  double damping = 1.0;  // backtracking factor; 1 disables line search

  void validate() const;
};

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> history;  // residual inf-norm before each update, plus the final one
  std::string failure;          // empty on success
};

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<SparseMatrix(const Vector&)>;

struct NewtonResult {
  Vector solution;
  NewtonReport report;
};

/// Newton's method with a direct sparse LU solve per iteration. Never throws
/// on non-convergence; inspect report.converged.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Vector guess,
                          const NewtonConfig& cfg = {});

/// Central-difference Jacobian. A non-positive `h` selects 1e-6 * (1 + |u|_inf).
Eigen::MatrixXd fd_jacobian(const ResidualFn& residual, const Vector& u, double h = 0.0);

struct HomotopyConfig {
  double delta_start = 1e-3;
  double delta_end = 0.5;
  int steps = 32;
  bool adaptive = true;
  int max_halvings = 20;

  void validate() const;
  /// Parameter value at fraction t in [0,1]: geometric when both ends share a
  /// sign and are nonzero, linear otherwise.
  double delta_at(double t) const;
};

struct HomotopyProblem {
  ResidualFn residual;
  JacobianFn jacobian;
};

using HomotopyFamily = std::function<HomotopyProblem(double delta)>;

struct HomotopyResult {
  Vector solution;         // at delta_end on success, else at last_good_delta
  NewtonReport report;     // report of the final Newton solve attempted
  double last_good_delta = 0.0;
  bool completed = false;
  int newton_solves = 0;
};

/// March delta over the schedule, warm-starting each Newton solve from the
/// previous solution. With cfg.adaptive a failed step halves the increment.
HomotopyResult homotopy_path(const HomotopyFamily& family, Vector seed, const HomotopyConfig& cfg,
                             const NewtonConfig& ncfg = {});

/// Field convenience wrapper around newton_solve.
struct FieldNewtonResult {
  ScalarField solution;
  NewtonReport report;
};

FieldNewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                               const ScalarField& guess, const NewtonConfig& cfg = {});

}  // namespace acstab

#endif  // ACSTAB_NONLINEAR_HPP
