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

#include "acstab/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace acstab {
namespace {

constexpr double kDedupTol = 1e-8;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_value(double a, double b) {
  return std::abs(a - b) <= kDedupTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double constant_rhs(double x, double eps) { return -(x * x * x - x) / (eps * eps); }

// Real solutions x of x + w * F(x) = rhs for constant x, i.e.
// -kappa x^3 + (1 + kappa) x - rhs = 0 with kappa = w / eps^2.
std::vector<double> solve_weighted(double w, double eps, double rhs, PreimageSet& set) {
  const double kappa = w / (eps * eps);
  if (kappa == 0.0) return {rhs};
  CubicRoots roots = real_cubic_roots(-kappa, 0.0, 1.0 + kappa, -rhs);
  std::vector<double> out;
  for (double x : roots.real_roots) {
    if (out.empty() || !same_value(out.back(), x)) out.push_back(x);
  }
  set.cubics.push_back(std::move(roots));
  return out;
}

void add_root(PreimageSet& set, double r, StageChain chain) {
  for (double existing : set.roots) {
    if (same_value(existing, r)) return;
  }
  set.roots.push_back(r);
  chain.phi0 = r;
  set.chains.push_back(std::move(chain));
}

void check_chain_tableau(const ButcherTableau& tab) {
  tab.validate();
  if (tab.stages() != 2) {
    throw ConfigError("constant preimage chain supports two-stage tableaux only");
  }
  if (tab.a(0, 0) == 0.0) throw ConfigError("constant preimage chain needs a_11 != 0");
  if (std::abs(tab.b(0) - tab.a(1, 0)) > 1e-14) {
    throw ConfigError("constant preimage chain needs b_1 == a_21");
  }
}

PreimageSet dirk_preimage(const SchemeKind& kind, double c, const ACParams& p) {
  const ButcherTableau& tab = kind.tableau;
  check_chain_tableau(tab);
  PreimageSet set{kind, c, {}, {}, {}};
  const double dt = p.dt;
  // c = phi_2 + dt (b_2 - a_22) F(phi_2)
  for (double phi2 : solve_weighted(dt * (tab.b(1) - tab.a(1, 1)), p.eps, c, set)) {
    // phi_1 + dt (a_21 - a_11) F(phi_1) = phi_2 - dt a_22 F(phi_2)
    const double rhs = phi2 - dt * tab.a(1, 1) * constant_rhs(phi2, p.eps);
    const std::vector<double> phi1s = solve_weighted(dt * (tab.a(1, 0) - tab.a(0, 0)), p.eps, rhs, set);
    const std::size_t cubic = set.cubics.size() - 1;
    for (double phi1 : phi1s) {
      const double phi0 = phi1 - dt * tab.a(0, 0) * constant_rhs(phi1, p.eps);
      add_root(set, phi0, StageChain{phi0, {phi1, phi2}, cubic});
    }
  }
  // Sort roots and chains together.
  std::vector<std::size_t> order(set.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return set.roots[a] < set.roots[b]; });
  std::vector<double> roots;
  std::vector<StageChain> chains;
  for (std::size_t i : order) {
    roots.push_back(set.roots[i]);
    chains.push_back(set.chains[i]);
  }
  set.roots = std::move(roots);
  set.chains = std::move(chains);
  return set;
}

}  // namespace

PreimageSet preimage_constants(const SchemeKind& kind, double c, const ACParams& p) {
  p.validate();
  kind.validate();
  const double e2 = p.eps * p.eps;
  PreimageSet set{kind, c, {}, {}, {}};
  switch (kind.tag) {
    case SchemeTag::BE:
      set.roots.push_back(c + p.dt * (c * c * c - c) / e2);
      return set;
    case SchemeTag::CN: {
      const double l = p.dt / (2.0 * e2);
      set.cubics.push_back(real_cubic_roots(l, 0.0, -(1.0 + l), c + l * (c * c * c - c)));
      break;
    }
    case SchemeTag::MODCN: {
      const double v = p.dt / (4.0 * e2);
      set.cubics.push_back(
          real_cubic_roots(v, v * c, v * c * c - 1.0 - 4.0 * v, v * c * c * c + c));
      break;
    }
    case SchemeTag::DIRK:
      return dirk_preimage(kind, c, p);
  }
  set.roots = set.cubics.front().real_roots;
  return set;
}

std::vector<double> IntervalSequence::boundaries() const {
  std::vector<double> out;
  out.reserve(r.size() + s.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.push_back(r[i]);
    if (i < s.size()) out.push_back(s[i]);
  }
  return out;
}

ACParams params_for_ratio(const SchemeKind& kind, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ConfigError("ratio must be positive");
  const double factor = kind.tag == SchemeTag::DIRK ? 4.0 : 2.0;
  return ACParams{1.0, factor * ratio};
}

namespace {

double unique_preimage_magnitude(const SchemeKind& kind, double target, const ACParams& p,
                                 const char* label, int index) {
  const PreimageSet set = preimage_constants(kind, target, p);
  bool unique = set.roots.size() == 1;
  for (const auto& cubic : set.cubics) unique = unique && cubic.discriminant_sign < 0;
  if (!unique) {
    std::ostringstream msg;
    msg << kind.name() << ": preimage of " << target << " for " << label << '_' << index
        << " has " << set.roots.size() << " real roots; expected exactly one";
    throw AnalysisError(msg.str());
  }
  return std::abs(set.roots.front());
}

}  // namespace

IntervalSequence interval_sequence(const SchemeKind& kind, double ratio, int count) {
  if (count < 1) throw ConfigError("count must be at least 1");
  if (kind.tag == SchemeTag::BE) {
    throw ConfigError("backward Euler has no convergence-interval sequence");
  }
  const ACParams p = params_for_ratio(kind, ratio);
  IntervalSequence seq{kind, ratio, {}, {}};
  switch (kind.tag) {
    case SchemeTag::CN:
      seq.r.push_back(std::sqrt(1.0 + 1.0 / ratio));
      for (int i = 2; i <= count; ++i) {
        seq.r.push_back(unique_preimage_magnitude(kind, -seq.r.back(), p, "r", i));
      }
      break;
    case SchemeTag::MODCN:
      seq.r.push_back(2.0 * std::sqrt(1.0 + 1.0 / (2.0 * ratio)));
      for (int i = 2; i <= count; ++i) {
        seq.r.push_back(unique_preimage_magnitude(kind, seq.r.back(), p, "r", i));
      }
      break;
    case SchemeTag::DIRK: {
      const PreimageSet zero = preimage_constants(kind, 0.0, p);
      std::vector<double> positive;
      for (double r : zero.roots) {
        if (r > kDedupTol) positive.push_back(r);
      }
      if (zero.roots.size() != 5 || positive.size() != 2) {
        std::ostringstream msg;
        msg << "dirk: expected five constant preimages of 0 at ratio " << ratio << ", found "
            << zero.roots.size();
        throw AnalysisError(msg.str());
      }
      const bool bundled = kind.tableau.a.isApprox(ButcherTableau::dirk2().a, 0.0) &&
                           kind.tableau.b.isApprox(ButcherTableau::dirk2().b, 0.0);
      seq.r.push_back(bundled ? 2.0 * std::sqrt(1.0 + 1.0 / ratio) : positive[0]);
      seq.s.push_back(positive[1]);
      for (int i = 2; i <= count; ++i) {
        seq.r.push_back(unique_preimage_magnitude(kind, seq.r.back(), p, "r", i));
        seq.s.push_back(unique_preimage_magnitude(kind, seq.s.back(), p, "s", i));
      }
      break;
    }
    case SchemeTag::BE: break;
  }
  return seq;
}

int ClassificationResult::sign_changes() const {
  int changes = 0;
  int last = (r > 0.0) - (r < 0.0);
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

ClassificationResult classify_constant_initial(const SchemeKind& kind, double r, const ACParams& p,
                                               int max_steps, double settle_tol) {
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  ClassificationResult out;
  out.r = r;
  double v = r;
  for (int n = 0; n < max_steps; ++n) {
    v = scalar_step(kind, v, p);
    if (!std::isfinite(v)) break;
    out.values.push_back(v);
    out.signs.push_back((v > 0.0) - (v < 0.0));
  }
  if (out.values.size() != static_cast<std::size_t>(max_steps)) return out;
  for (int sign : {1, -1}) {
    int start = -1;
    for (std::size_t i = out.values.size(); i-- > 0;) {
      if (std::abs(out.values[i] - sign) > settle_tol) break;
      start = static_cast<int>(i) + 1;  // steps are 1-based
    }
    if (start > 0) {
      out.settle_step = start;
      out.limit_sign = sign;
    }
  }
  return out;
}

namespace {

bool is_pole(double den, double magnitude) {
  return std::abs(den) <= 1e-12 * std::max(1.0, magnitude);
}

}  // namespace

PerturbationGain perturbation_gain(const SchemeKind& kind, double c, double r, const ModeIndex& k,
                                   const ACParams& p) {
  p.validate();
  const double e2 = p.eps * p.eps;
  const double m = k.eigenvalue();
  double num = 0.0;
  double den = 0.0;
  double magnitude = 0.0;
  switch (kind.tag) {
    case SchemeTag::CN:
      num = 3.0 * c * c / e2 - 1.0 / e2 + 2.0 / p.dt + m;
      den = 3.0 * r * r / e2 - 1.0 / e2 - 2.0 / p.dt + m;
      magnitude = 3.0 * r * r / e2 + 1.0 / e2 + 2.0 / p.dt + m;
      break;
    case SchemeTag::MODCN:
      num = (3.0 * c * c + r * r + 2.0 * c * r) / (2.0 * e2) + 2.0 / p.dt + m;
      den = (3.0 * r * r + c * c + 2.0 * c * r - 4.0) / (2.0 * e2) - 2.0 / p.dt + m;
      magnitude = (3.0 * r * r + c * c + 2.0 * std::abs(c * r) + 4.0) / (2.0 * e2) + 2.0 / p.dt + m;
      break;
    default:
      throw ConfigError("perturbation_gain supports cn and modcn; use dirk_perturbation_gains");
  }
  PerturbationGain g{kind, c, r, k, {}, false};
  if (is_pole(den, magnitude)) {
    g.pole = true;
    g.values = {kNaN};
  } else {
    g.values = {-num / den};
  }
  return g;
}

PerturbationGain dirk_perturbation_gains(double c2, double c1, const ModeIndex& k,
                                         const ACParams& p) {
  p.validate();
  const double diffusion = p.dt * k.eigenvalue() / 4.0;
  const double react2 = p.dt / (4.0 * p.eps * p.eps) * (3.0 * c2 * c2 - 1.0);
  const double react1 = p.dt / (4.0 * p.eps * p.eps) * (3.0 * c1 * c1 - 1.0);
  const double den2 = 1.0 - diffusion - react2;
  const double den1 = 1.0 - diffusion - react1;
  PerturbationGain g{SchemeKind::dirk(), c1, c2, k, {}, false};
  if (is_pole(den2, 1.0 + diffusion + std::abs(react2)) ||
      is_pole(den1, 1.0 + diffusion + std::abs(react1))) {
    g.pole = true;
    g.values = {kNaN, kNaN, kNaN};
    return g;
  }
  const double b2 = 1.0 / den2;
  const double b1 = b2 * (1.0 + diffusion + react2) / den1;
  const double b0 = b1 * (1.0 + diffusion + react1);
  g.values = {b2, b1, b0};
  return g;
}

namespace {

SparseMatrix diag_minus(const SparseMatrix& lap, const Vector& d) {
  SparseMatrix m = -lap;
  for (Eigen::Index i = 0; i < d.size(); ++i) m.coeffRef(i, i) += d[i];
  return m;
}

// Stacked stage unknowns [phi_1; ...; phi_s]; phi_0 is eliminated through
// phi_0 = phi_1 - dt a_11 F(phi_1).
HomotopyFamily dirk_preimage_family(const ButcherTableau& tab, const ACParams& p,
                                    const GridSpec& grid, double c, const Vector& shape) {
  auto lap = std::make_shared<const SparseMatrix>(laplacian_matrix(grid));
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  const int s = tab.stages();
  const double dt = p.dt;
  const double eps = p.eps;
  return [=](double delta) {
    const Vector next = Vector::Constant(n, c) + delta * shape;
    auto split = [=](const Vector& u, int i) { return u.segment(i * n, n); };
    HomotopyProblem prob;
    prob.residual = [=](const Vector& u) -> Vector {
      std::vector<Vector> f;
      for (int j = 0; j < s; ++j) {
        const Vector x = split(u, j);
        f.push_back((*lap) * x + reaction(x, eps));
      }
      const Vector phi0 = split(u, 0) - dt * tab.a(0, 0) * f[0];
      Vector out(s * n);
      Vector fin = next - phi0;
      for (int j = 0; j < s; ++j) fin -= dt * tab.b(j) * f[static_cast<std::size_t>(j)];
      out.segment(0, n) = fin;
      for (int i = 1; i < s; ++i) {
        Vector e = split(u, i) - phi0;
        for (int j = 0; j <= i; ++j) e -= dt * tab.a(i, j) * f[static_cast<std::size_t>(j)];
        out.segment(i * n, n) = e;
      }
      return out;
    };
    prob.jacobian = [=](const Vector& u) -> SparseMatrix {
      // dF_j/dphi_j = L - diag(3 phi_j^2 - 1)/eps^2
      std::vector<SparseMatrix> jf;
      for (int j = 0; j < s; ++j) {
        const Vector x = split(u, j);
        const Vector d = (3.0 * x.array().square() - 1.0).matrix() / (eps * eps);
        jf.push_back(-diag_minus(*lap, d));
      }
      std::vector<Eigen::Triplet<double>> t;
      auto put = [&](int row_block, int col_block, const SparseMatrix& m) {
        for (int k = 0; k < m.outerSize(); ++k) {
          for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            t.emplace_back(row_block * n + it.row(), col_block * n + it.col(), it.value());
          }
        }
      };
      const SparseMatrix eye = [&] {
        SparseMatrix e(n, n);
        e.setIdentity();
        return e;
      }();
      // d phi_0 / d phi_1 = I - dt a_11 J_1
      const SparseMatrix dphi0 = eye - dt * tab.a(0, 0) * jf[0];
      put(0, 0, SparseMatrix(-dphi0 - dt * tab.b(0) * jf[0]));
      for (int j = 1; j < s; ++j) put(0, j, SparseMatrix(-dt * tab.b(j) * jf[static_cast<std::size_t>(j)]));
      for (int i = 1; i < s; ++i) {
        put(i, 0, SparseMatrix(-dphi0 - dt * tab.a(i, 0) * jf[0]));
        for (int j = 1; j <= i; ++j) {
          SparseMatrix blk = -dt * tab.a(i, j) * jf[static_cast<std::size_t>(j)];
          if (i == j) blk += eye;
          put(i, j, blk);
        }
      }
      SparseMatrix jac(s * n, s * n);
      jac.setFromTriplets(t.begin(), t.end());
      return jac;
    };
    return prob;
  };
}

}  // namespace

PreimageFieldResult preimage_field(const SchemeKind& kind, double c, const ScalarField& shape,
                                   const ScalarField& seed, const ACParams& p,
                                   const HomotopyConfig& hcfg, const NewtonConfig& ncfg) {
  p.validate();
  kind.validate();
  hcfg.validate();
  if (!(shape.grid() == seed.grid())) throw ConfigError("shape and seed live on different grids");
  const GridSpec& grid = shape.grid();
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  const Vector shape_values = shape.values();

  auto target_at = [&](double delta) {
    return ScalarField(grid, Vector::Constant(n, c) + delta * shape_values);
  };

  PreimageFieldResult out{seed, {}, false, kNaN, target_at(hcfg.delta_start), kNaN, {}};
  HomotopyResult h;
  if (kind.tag == SchemeTag::DIRK) {
    const ButcherTableau& tab = kind.tableau;
    if (tab.a(0, 0) == 0.0) throw ConfigError("field preimage needs a_11 != 0");
    const int s = tab.stages();
    // Stage seeds from a forward sweep of the seed.
    Vector stacked(s * n);
    StepResult fwd = dirk_step(seed, tab, p, StepOptions(ncfg));
    for (int i = 0; i < s; ++i) {
      stacked.segment(i * n, n) =
          fwd.report.success ? fwd.stages[static_cast<std::size_t>(i)].values() : seed.values();
    }
    h = homotopy_path(dirk_preimage_family(tab, p, grid, c, shape_values), std::move(stacked), hcfg,
                      ncfg);
    const SparseMatrix lap = laplacian_matrix(grid);
    const Vector phi1 = h.solution.segment(0, n);
    const Vector phi0 = phi1 - p.dt * tab.a(0, 0) * (lap * phi1 + reaction(phi1, p.eps));
    if (phi0.allFinite()) out.phi_n = ScalarField(grid, phi0);
    for (int i = 0; i < s; ++i) {
      const Vector si = h.solution.segment(i * n, n);
      if (si.allFinite()) out.stages.emplace_back(grid, si);
    }
  } else {
    const TwoLevelEquation eq = two_level_equation(kind.tag, grid, p);
    HomotopyFamily family = [&](double delta) {
      auto next = std::make_shared<const Vector>(Vector::Constant(n, c) + delta * shape_values);
      return HomotopyProblem{
          [eq, next](const Vector& y) { return eq.residual(*next, y); },
          [eq, next](const Vector& y) { return eq.d_prev(*next, y); }};
    };
    h = homotopy_path(family, seed.values(), hcfg, ncfg);
    if (h.solution.allFinite()) out.phi_n = ScalarField(grid, h.solution);
  }

  out.report = h.report;
  out.completed = h.completed;
  out.last_good_delta = h.last_good_delta;
  if (std::isfinite(h.last_good_delta)) {
    out.target = target_at(h.last_good_delta);
    // a deliberately short iteration cap should not fail the check itself
    NewtonConfig verify = ncfg;
    verify.max_iter = std::max(ncfg.max_iter, NewtonConfig{}.max_iter);
    const StepResult fwd = step(kind, out.phi_n, p, StepOptions(verify));
    out.forward_residual =
        fwd.report.success ? (fwd.next.values() - out.target.values()).cwiseAbs().maxCoeff()
                           : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace acstab
