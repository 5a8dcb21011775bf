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

#include "acstab/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseLU>

namespace acstab {

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("newton tol must be positive");
  if (max_iter < 1) throw ConfigError("newton max_iter must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("newton damping must lie in (0,1]");
}

namespace {

constexpr double kLinearRelTol = 1e-12;
constexpr int kMaxRefinements = 2;

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Solves J x = rhs with sparse LU plus a little iterative refinement.
bool solve_linear(SparseMatrix jac, const Vector& rhs, Vector& x, std::string& why) {
  jac.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(jac);
  lu.factorize(jac);
  if (lu.info() != Eigen::Success) {
    why = "singular Jacobian: " + lu.lastErrorMessage();
    return false;
  }
  x = lu.solve(rhs);
  const double rhs_norm = std::max(rhs.norm(), std::numeric_limits<double>::min());
  for (int k = 0; k < kMaxRefinements; ++k) {
    const Vector r = rhs - jac * x;
    if (r.norm() <= kLinearRelTol * rhs_norm) break;
    x += lu.solve(r);
  }
  if (!x.allFinite()) {
    why = "linear solve produced non-finite values";
    return false;
  }
  return true;
}

}  // namespace

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Vector guess,
                          const NewtonConfig& cfg) {
  cfg.validate();
  NewtonResult out{std::move(guess), {}};
  NewtonReport& rep = out.report;
  Vector& u = out.solution;

  Vector res = residual(u);
  double norm = inf_norm(res);
  rep.history.push_back(norm);
  for (;;) {
    rep.residual = norm;
    if (!std::isfinite(norm)) {
      rep.failure = "residual became non-finite";
      return out;
    }
    if (norm <= cfg.tol) {
      rep.converged = true;
      return out;
    }
    if (rep.iterations >= cfg.max_iter) {
      rep.failure = "no convergence after " + std::to_string(cfg.max_iter) + " iterations";
      return out;
    }
    Vector dx;
    if (!solve_linear(jacobian(u), res, dx, rep.failure)) return out;

    double step = 1.0;
    Vector trial = u - dx;
    Vector trial_res = residual(trial);
    if (cfg.damping < 1.0) {
      while (!(inf_norm(trial_res) < norm) && step > 1e-6) {
        step *= cfg.damping;
        trial = u - step * dx;
        trial_res = residual(trial);
      }
    }
    u = std::move(trial);
    res = std::move(trial_res);
    norm = inf_norm(res);
    ++rep.iterations;
    rep.history.push_back(norm);
  }
}

FieldNewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                               const ScalarField& guess, const NewtonConfig& cfg) {
  auto r = newton_solve(residual, jacobian, guess.values(), cfg);
  if (!r.solution.allFinite()) {
    return {guess, std::move(r.report)};
  }
  return {ScalarField(guess.grid(), std::move(r.solution)), std::move(r.report)};
}

Eigen::MatrixXd fd_jacobian(const ResidualFn& residual, const Vector& u, double h) {
  if (!(h > 0.0)) h = 1e-6 * (1.0 + inf_norm(u));
  const Eigen::Index n = u.size();
  Eigen::MatrixXd jac;
  Vector probe = u;
  for (Eigen::Index j = 0; j < n; ++j) {
    // divide by the step actually taken after rounding
    const double up = u[j] + h;
    const double down = u[j] - h;
    probe[j] = up;
    const Vector plus = residual(probe);
    probe[j] = down;
    const Vector minus = residual(probe);
    probe[j] = u[j];
    if (j == 0) jac.resize(plus.size(), n);
    jac.col(j) = (plus - minus) / (up - down);
  }
  return jac;
}

void HomotopyConfig::validate() const {
  if (!std::isfinite(delta_start) || !std::isfinite(delta_end)) {
    throw ConfigError("homotopy endpoints must be finite");
  }
  if (steps < 1) throw ConfigError("homotopy needs at least one step");
  if (max_halvings < 0) throw ConfigError("homotopy max_halvings must be nonnegative");
}

double HomotopyConfig::delta_at(double t) const {
  if (t <= 0.0) return delta_start;
  if (t >= 1.0) return delta_end;
  if (delta_start != 0.0 && delta_end != 0.0 && (delta_start > 0.0) == (delta_end > 0.0)) {
    return delta_start * std::pow(delta_end / delta_start, t);
  }
  return delta_start + t * (delta_end - delta_start);
}

HomotopyResult homotopy_path(const HomotopyFamily& family, Vector seed, const HomotopyConfig& cfg,
                             const NewtonConfig& ncfg) {
  cfg.validate();
  HomotopyResult out;
  out.last_good_delta = std::numeric_limits<double>::quiet_NaN();

  auto attempt = [&](double delta, const Vector& start) {
    const HomotopyProblem prob = family(delta);
    ++out.newton_solves;
    return newton_solve(prob.residual, prob.jacobian, start, ncfg);
  };

  NewtonResult first = attempt(cfg.delta_at(0.0), seed);
  out.report = first.report;
  if (!first.report.converged) {
    out.solution = std::move(seed);
    return out;
  }
  out.solution = std::move(first.solution);
  out.last_good_delta = cfg.delta_at(0.0);

  // The increment is base / 2^level; capping level keeps each accepted step
  // at least base / 2^max_halvings, so the march cannot stall near a fold.
  const double base = 1.0 / cfg.steps;
  int level = 0;
  double t = 0.0;
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + std::ldexp(base, -level));
    if (cfg.delta_at(t_next) == out.last_good_delta) {
      t = t_next;  // the problem has not moved; keep the current solve
      continue;
    }
    NewtonResult r = attempt(cfg.delta_at(t_next), out.solution);
    out.report = r.report;
    if (r.report.converged) {
      out.solution = std::move(r.solution);
      t = t_next;
      out.last_good_delta = cfg.delta_at(t);
      level = std::max(0, level - 1);
      continue;
    }
    if (!cfg.adaptive || level >= cfg.max_halvings) {
      out.report.failure = "continuation stalled at delta = " + std::to_string(out.last_good_delta) +
                           ": " + r.report.failure;
      return out;
    }
    ++level;
  }
  out.completed = true;
  return out;
}

}  // namespace acstab
