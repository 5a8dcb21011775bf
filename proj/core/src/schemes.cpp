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

#include "acstab/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>

#include "acstab/cubic.hpp"

namespace acstab {

SchemeKind SchemeKind::dirk(ButcherTableau tab) {
  tab.validate();
  return {SchemeTag::DIRK, std::move(tab)};
}

SchemeKind SchemeKind::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "be") return be();
  if (lower == "cn") return cn();
  if (lower == "modcn") return modcn();
  if (lower == "dirk2" || lower == "dirk") return dirk();
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected be, cn, modcn, dirk2)");
}

std::string SchemeKind::name() const {
  switch (tag) {
    case SchemeTag::BE: return "be";
    case SchemeTag::CN: return "cn";
    case SchemeTag::MODCN: return "modcn";
    case SchemeTag::DIRK: return tableau.stages() == 2 ? "dirk2" : "dirk";
  }
  return "unknown";
}

void SchemeKind::validate() const {
  if (tag == SchemeTag::DIRK) tableau.validate();
}

namespace {

SparseMatrix sparse_diag(const Vector& d) {
  const auto n = d.size();
  SparseMatrix m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) m.insert(i, i) = d[i];
  m.makeCompressed();
  return m;
}

StepResult failed_step(const ScalarField& phi_n, StepReport report) {
  report.success = false;
  if (report.diagnostic.empty() && !report.stages.empty()) {
    report.diagnostic = report.stages.back().failure;
  }
  return {phi_n, std::move(report), {}};
}

Vector initial_guess(const Vector& phi_n, const SparseMatrix& lap, const ACParams& p,
                     GuessPolicy policy) {
  if (policy == GuessPolicy::kForwardEuler) {
    return phi_n + p.dt * (lap * phi_n + reaction(phi_n, p.eps));
  }
  return phi_n;
}

StepResult two_level_step(SchemeTag tag, const ScalarField& phi_n, const ACParams& p,
                          const StepOptions& opt) {
  p.validate();
  const GridSpec& grid = phi_n.grid();
  const TwoLevelEquation eq = two_level_equation(tag, grid, p);
  const Vector& prev = phi_n.values();
  const SparseMatrix lap = laplacian_matrix(grid);
  auto res = [&](const Vector& x) { return eq.residual(x, prev); };
  auto jac = [&](const Vector& x) { return eq.d_next(x, prev); };
  NewtonResult r = newton_solve(res, jac, initial_guess(prev, lap, p, opt.guess), opt.newton);
  StepReport report;
  report.stages.push_back(r.report);
  if (!r.report.converged) return failed_step(phi_n, std::move(report));
  report.success = true;
  return {ScalarField(grid, std::move(r.solution)), std::move(report), {}};
}

}  // namespace

TwoLevelEquation two_level_equation(SchemeTag tag, const GridSpec& grid, const ACParams& p) {
  p.validate();
  auto lap = std::make_shared<const SparseMatrix>(laplacian_matrix(grid));
  const double dt = p.dt;
  const double e2 = p.eps * p.eps;
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  TwoLevelEquation eq;
  switch (tag) {
    case SchemeTag::BE:
      eq.residual = [=](const Vector& x, const Vector& y) -> Vector {
        return (x - y) / dt - (*lap) * x + (x.array().cube() - x.array()).matrix() / e2;
      };
      eq.d_next = [=](const Vector& x, const Vector&) -> SparseMatrix {
        Vector d = Vector::Constant(n, 1.0 / dt) + (3.0 * x.array().square() - 1.0).matrix() / e2;
        return SparseMatrix(sparse_diag(d) - (*lap));
      };
      eq.d_prev = [=](const Vector&, const Vector&) -> SparseMatrix {
        return sparse_diag(Vector::Constant(n, -1.0 / dt));
      };
      break;
    case SchemeTag::CN:
      eq.residual = [=](const Vector& x, const Vector& y) -> Vector {
        return (x - y) / dt - 0.5 * ((*lap) * x + (*lap) * y) +
               (x.array().cube() - x.array()).matrix() / (2.0 * e2) +
               (y.array().cube() - y.array()).matrix() / (2.0 * e2);
      };
      eq.d_next = [=](const Vector& x, const Vector&) -> SparseMatrix {
        Vector d = Vector::Constant(n, 1.0 / dt) +
                   (3.0 * x.array().square() - 1.0).matrix() / (2.0 * e2);
        return SparseMatrix(sparse_diag(d) - 0.5 * (*lap));
      };
      eq.d_prev = [=](const Vector&, const Vector& y) -> SparseMatrix {
        Vector d = Vector::Constant(n, -1.0 / dt) +
                   (3.0 * y.array().square() - 1.0).matrix() / (2.0 * e2);
        return SparseMatrix(sparse_diag(d) - 0.5 * (*lap));
      };
      break;
    case SchemeTag::MODCN:
      eq.residual = [=](const Vector& x, const Vector& y) -> Vector {
        const auto xa = x.array();
        const auto ya = y.array();
        return (x - y) / dt - 0.5 * ((*lap) * x + (*lap) * y) +
               ((xa + ya) * (xa.square() + ya.square())).matrix() / (4.0 * e2) - y / e2;
      };
      eq.d_next = [=](const Vector& x, const Vector& y) -> SparseMatrix {
        const auto xa = x.array();
        const auto ya = y.array();
        Vector d = Vector::Constant(n, 1.0 / dt) +
                   (3.0 * xa.square() + 2.0 * xa * ya + ya.square()).matrix() / (4.0 * e2);
        return SparseMatrix(sparse_diag(d) - 0.5 * (*lap));
      };
      eq.d_prev = [=](const Vector& x, const Vector& y) -> SparseMatrix {
        const auto xa = x.array();
        const auto ya = y.array();
        Vector d = Vector::Constant(n, -1.0 / dt - 1.0 / e2) +
                   (xa.square() + 2.0 * xa * ya + 3.0 * ya.square()).matrix() / (4.0 * e2);
        return SparseMatrix(sparse_diag(d) - 0.5 * (*lap));
      };
      break;
    case SchemeTag::DIRK:
      throw ConfigError("DIRK is not a two-level scheme; use dirk_stage_problem");
  }
  return eq;
}

HomotopyProblem dirk_stage_problem(const GridSpec& grid, const ACParams& p, double a_ii,
                                   Vector base) {
  p.validate();
  auto lap = std::make_shared<const SparseMatrix>(laplacian_matrix(grid));
  auto b = std::make_shared<const Vector>(std::move(base));
  const double w = p.dt * a_ii;
  const double eps = p.eps;
  const double e2 = eps * eps;
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  HomotopyProblem prob;
  prob.residual = [=](const Vector& x) -> Vector {
    return x - *b - w * ((*lap) * x + reaction(x, eps));
  };
  prob.jacobian = [=](const Vector& x) -> SparseMatrix {
    Vector d = Vector::Ones(n) + w * (3.0 * x.array().square() - 1.0).matrix() / e2;
    return SparseMatrix(sparse_diag(d) - w * (*lap));
  };
  return prob;
}

StepResult be_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt) {
  return two_level_step(SchemeTag::BE, phi_n, p, opt);
}

StepResult cn_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt) {
  return two_level_step(SchemeTag::CN, phi_n, p, opt);
}

StepResult modcn_step(const ScalarField& phi_n, const ACParams& p, const StepOptions& opt) {
  return two_level_step(SchemeTag::MODCN, phi_n, p, opt);
}

StepResult dirk_step(const ScalarField& phi_n, const ButcherTableau& tab, const ACParams& p,
                     const StepOptions& opt) {
  tab.validate();
  p.validate();
  const GridSpec& grid = phi_n.grid();
  const SparseMatrix lap = laplacian_matrix(grid);
  const Vector& phi0 = phi_n.values();
  const int s = tab.stages();

  std::vector<Vector> rhs;  // F(phi_j)
  std::vector<ScalarField> stages;
  StepReport report;
  Vector guess = initial_guess(phi0, lap, p, opt.guess);
  for (int i = 0; i < s; ++i) {
    Vector base = phi0;
    for (int j = 0; j < i; ++j) base += p.dt * tab.a(i, j) * rhs[static_cast<std::size_t>(j)];
    Vector stage;
    if (tab.a(i, i) == 0.0) {
      stage = std::move(base);
      report.stages.push_back(NewtonReport{0, 0.0, true, {0.0}, {}});
    } else {
      const HomotopyProblem prob = dirk_stage_problem(grid, p, tab.a(i, i), std::move(base));
      NewtonResult r = newton_solve(prob.residual, prob.jacobian, guess, opt.newton);
      report.stages.push_back(r.report);
      if (!r.report.converged) {
        report.diagnostic = "stage " + std::to_string(i + 1) + ": " + r.report.failure;
        return failed_step(phi_n, std::move(report));
      }
      stage = std::move(r.solution);
    }
    rhs.push_back(lap * stage + reaction(stage, p.eps));
    guess = stage;
    stages.emplace_back(grid, std::move(stage));
  }
  Vector next = phi0;
  for (int i = 0; i < s; ++i) next += p.dt * tab.b(i) * rhs[static_cast<std::size_t>(i)];
  report.success = true;
  return {ScalarField(grid, std::move(next)), std::move(report), std::move(stages)};
}

StepResult step(const SchemeKind& kind, const ScalarField& phi_n, const ACParams& p,
                const StepOptions& opt) {
  switch (kind.tag) {
    case SchemeTag::BE: return be_step(phi_n, p, opt);
    case SchemeTag::CN: return cn_step(phi_n, p, opt);
    case SchemeTag::MODCN: return modcn_step(phi_n, p, opt);
    case SchemeTag::DIRK: return dirk_step(phi_n, kind.tableau, p, opt);
  }
  throw ConfigError("unknown scheme");
}

int Trajectory::center_sign_changes() const {
  int changes = 0;
  int last = 0;
  for (const auto& s : summaries) {
    const int sign = (s.center > 0.0) - (s.center < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

namespace {

// First index from which every entry satisfies `within`; -1 when the last
// entry already fails.
template <typename Pred>
int settled_suffix(std::size_t count, Pred within) {
  int start = -1;
  for (std::size_t i = count; i-- > 0;) {
    if (!within(i)) break;
    start = static_cast<int>(i);
  }
  return start;
}

}  // namespace

Trajectory simulate(const SchemeKind& kind, const ScalarField& phi0, int steps, const ACParams& p,
                    const SimulateOptions& opt) {
  if (steps < 1) throw ConfigError("simulate needs at least one step");
  if (!(opt.settle_tol > 0.0)) throw ConfigError("settle_tol must be positive");
  kind.validate();
  p.validate();

  Trajectory traj;
  std::vector<double> dist_plus;
  std::vector<double> dist_minus;
  auto record = [&](int n, const ScalarField& u) {
    traj.summaries.push_back(
        {n, n * p.dt, u.min(), u.max(), u.center_value(), u.l2_norm()});
    dist_plus.push_back(u.distance_to(1.0));
    dist_minus.push_back(u.distance_to(-1.0));
    if (opt.keep_snapshots) traj.snapshots.push_back(u);
  };

  ScalarField u = phi0;
  record(0, u);
  for (int n = 1; n <= steps; ++n) {
    StepResult r = step(kind, u, p, opt.step);
    if (!r.report.success) {
      traj.failed = true;
      traj.diagnostic = "step " + std::to_string(n) + " failed: " + r.report.diagnostic;
      break;
    }
    u = std::move(r.next);
    record(n, u);
  }

  const std::size_t count = traj.summaries.size();
  const double tol = opt.settle_tol;
  for (int sign : {1, -1}) {
    const auto& dist = sign > 0 ? dist_plus : dist_minus;
    const int full = settled_suffix(count, [&](std::size_t i) { return dist[i] <= tol; });
    if (full >= 0) {
      traj.settled = true;
      traj.settle_step = full;
      traj.limit_sign = sign;
    }
    const int centre = settled_suffix(count, [&](std::size_t i) {
      return std::abs(traj.summaries[i].center - sign) <= tol;
    });
    if (centre >= 0) {
      traj.center_settle_step = centre;
      traj.center_limit_sign = sign;
    }
  }
  return traj;
}

namespace {

struct Cubic {
  double a3, a2, a1, a0;
};

std::vector<double> distinct_real_roots(const Cubic& q) {
  std::vector<double> out;
  if (q.a3 == 0.0) {
    // Linear fallback (only reachable for a zero-weight stage).
    if (q.a1 != 0.0) out.push_back(-q.a0 / q.a1);
    return out;
  }
  for (double r : real_cubic_roots(q.a3, q.a2, q.a1, q.a0).real_roots) {
    if (out.empty() || std::abs(r - out.back()) > 1e-12 * std::max(1.0, std::abs(r))) {
      out.push_back(r);
    }
  }
  return out;
}

// Newton on a scalar cubic; NaN when it does not converge.
double scalar_newton(const Cubic& q, double x) {
  if (q.a3 == 0.0) return q.a1 != 0.0 ? -q.a0 / q.a1 : std::numeric_limits<double>::quiet_NaN();
  const double scale = cubic_scale(q.a3, q.a2, q.a1, q.a0);
  for (int it = 0; it < 200; ++it) {
    const double f = eval_cubic(q.a3, q.a2, q.a1, q.a0, x);
    if (std::abs(f) <= 1e-14 * scale) return x;
    const double df = (3.0 * q.a3 * x + 2.0 * q.a2) * x + q.a1;
    if (df == 0.0 || !std::isfinite(df)) break;
    const double dx = f / df;
    x -= dx;
    if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) return x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// x + w * (x^3 - x) / eps^2 = base, i.e. x - dt*a*F(x) = base for constants.
Cubic stage_cubic(double w, double eps, double base) {
  const double kappa = w / (eps * eps);
  return {kappa, 0.0, 1.0 - kappa, -base};
}

double constant_rhs(double x, double eps) { return -(x * x * x - x) / (eps * eps); }

Cubic two_level_cubic(SchemeTag tag, double r, const ACParams& p) {
  const double e2 = p.eps * p.eps;
  switch (tag) {
    case SchemeTag::BE: {
      const double k = p.dt / e2;
      return {k, 0.0, 1.0 - k, -r};
    }
    case SchemeTag::CN: {
      const double l = p.dt / (2.0 * e2);
      return {l, 0.0, 1.0 - l, l * (r * r * r - r) - r};
    }
    case SchemeTag::MODCN: {
      const double v = p.dt / (4.0 * e2);
      return {v, v * r, v * r * r + 1.0, v * r * r * r - r - 4.0 * v * r};
    }
    case SchemeTag::DIRK: break;
  }
  throw ConfigError("no single-cubic reduction for DIRK");
}

void mark_selected(std::vector<ScalarImage>& images, double picked) {
  if (!std::isfinite(picked)) return;
  std::size_t best = images.size();
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double gap = std::abs(images[i].value - picked);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (best < images.size() && best_gap <= 1e-6 * std::max(1.0, std::abs(picked))) {
    images[best].selected = true;
  }
}

void add_image(std::vector<ScalarImage>& images, double v) {
  for (const auto& im : images) {
    if (std::abs(im.value - v) <= 1e-8 * std::max(1.0, std::abs(v))) return;
  }
  images.push_back({v, false});
}

// Enumerate every real stage branch of a constant DIRK step.
void dirk_branches(const ButcherTableau& tab, const ACParams& p, double r, int stage,
                   std::vector<double>& f, std::vector<ScalarImage>& images) {
  const int s = tab.stages();
  if (stage == s) {
    double next = r;
    for (int i = 0; i < s; ++i) next += p.dt * tab.b(i) * f[static_cast<std::size_t>(i)];
    add_image(images, next);
    return;
  }
  double base = r;
  for (int j = 0; j < stage; ++j) base += p.dt * tab.a(stage, j) * f[static_cast<std::size_t>(j)];
  for (double x : distinct_real_roots(stage_cubic(p.dt * tab.a(stage, stage), p.eps, base))) {
    f.push_back(constant_rhs(x, p.eps));
    dirk_branches(tab, p, r, stage + 1, f, images);
    f.pop_back();
  }
}

double dirk_newton_path(const ButcherTableau& tab, const ACParams& p, double r) {
  const int s = tab.stages();
  std::vector<double> f;
  double guess = r;
  for (int i = 0; i < s; ++i) {
    double base = r;
    for (int j = 0; j < i; ++j) base += p.dt * tab.a(i, j) * f[static_cast<std::size_t>(j)];
    const double x = scalar_newton(stage_cubic(p.dt * tab.a(i, i), p.eps, base), guess);
    if (!std::isfinite(x)) return x;
    f.push_back(constant_rhs(x, p.eps));
    guess = x;
  }
  double next = r;
  for (int i = 0; i < s; ++i) next += p.dt * tab.b(i) * f[static_cast<std::size_t>(i)];
  return next;
}

}  // namespace

std::vector<ScalarImage> scalar_map(const SchemeKind& kind, double r, const ACParams& p) {
  p.validate();
  kind.validate();
  std::vector<ScalarImage> images;
  double picked = std::numeric_limits<double>::quiet_NaN();
  if (kind.tag == SchemeTag::DIRK) {
    std::vector<double> f;
    dirk_branches(kind.tableau, p, r, 0, f, images);
    picked = dirk_newton_path(kind.tableau, p, r);
  } else {
    const Cubic q = two_level_cubic(kind.tag, r, p);
    for (double c : distinct_real_roots(q)) images.push_back({c, false});
    picked = scalar_newton(q, r);
  }
  std::sort(images.begin(), images.end(),
            [](const ScalarImage& a, const ScalarImage& b) { return a.value < b.value; });
  mark_selected(images, picked);
  return images;
}

double scalar_step(const SchemeKind& kind, double r, const ACParams& p) {
  for (const auto& im : scalar_map(kind, r, p)) {
    if (im.selected) return im.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace acstab
