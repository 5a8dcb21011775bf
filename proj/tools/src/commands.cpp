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

#include "acstab_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "acstab/robustness.hpp"
#include "acstab/stability.hpp"
#include "acstab_cli/csv.hpp"
#include "acstab_cli/parallel.hpp"
#include "acstab_cli/reference.hpp"

namespace acstab::cli {
namespace {

using Row = std::vector<std::string>;

// Largest |step(phi_n) - target| accepted from a field preimage.
constexpr double kForwardCheckTol = 1e-6;

std::string num(double v) { return format_number(v); }
std::string num(int v) { return format_number(v); }

char sign_char(int s) { return s > 0 ? '+' : (s < 0 ? '-' : '0'); }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Approaching +-1 takes a few eps^2 of simulated time, so small steps need a
// proportionally larger iteration budget.
int default_iterations(const ACParams& p) {
  return static_cast<int>(std::max(400.0, std::ceil(10.0 * p.eps * p.eps / p.dt)));
}

// ---- reproduce ----------------------------------------------------------

std::vector<std::string> boundary_names(const SchemeKind& kind, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) {
    names.push_back("r" + std::to_string(i));
    if (kind.tag == SchemeTag::DIRK) names.push_back("s" + std::to_string(i));
  }
  return names;
}

std::vector<double> boundaries(const IntervalSequence& seq) {
  return seq.scheme.tag == SchemeTag::DIRK ? seq.boundaries() : seq.r;
}

std::vector<IntervalSequence> sequences_for(const SchemeKind& kind, const std::vector<double>& ratios,
                                            int count) {
  std::vector<IntervalSequence> seqs(ratios.size());
  parallel_for(ratios.size(), [&](std::size_t i) { seqs[i] = interval_sequence(kind, ratios[i], count); });
  return seqs;
}

int reproduce_intervals(const IntervalReference& ref, const RunConfig& cfg, std::ostream& out,
                        std::ostream& log) {
  const auto seqs = sequences_for(ref.scheme, ref.ratios, ref.count);
  const auto names = boundary_names(ref.scheme, ref.count);
  Row header{"ratio"};
  header.insert(header.end(), names.begin(), names.end());
  CsvWriter csv(out, header);
  int passed = 0, total = 0;
  for (std::size_t row = 0; row < ref.ratios.size(); ++row) {
    const auto got = boundaries(seqs[row]);
    Row cells{num(ref.ratios[row])};
    for (std::size_t j = 0; j < got.size(); ++j) {
      cells.push_back(num(got[j]));
      if (!cfg.check) continue;
      const bool ok = matches_printed(got[j], ref.values[row][j]);
      ++total;
      passed += ok;
      log << ref.id << " ratio=" << num(ref.ratios[row]) << ' ' << names[j] << " computed=" << num(got[j])
          << " printed=" << num(ref.values[row][j]) << (ok ? " pass" : " FAIL") << '\n';
    }
    csv.row(cells);
  }
  if (!cfg.check) return kExitOk;
  log << ref.id << ": " << passed << '/' << total << " cells match\n";
  return passed == total ? kExitOk : kExitMismatch;
}

int reproduce_thresholds(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  CsvWriter csv(out, {"scheme", "formula", "eps2_multiple", "dt_max"});
  int passed = 0;
  const auto& ref = threshold_reference();
  for (const auto& want : ref) {
    const StabilityThreshold t = stability_threshold(SchemeKind::parse(want.scheme), cfg.eps);
    const std::string formula = to_string(t.formula);
    csv.row({want.scheme, formula, num(t.eps2_multiple), num(t.dt_max)});
    if (!cfg.check) continue;
    const bool ok = formula == want.formula && t.eps2_multiple == want.eps2_multiple;
    passed += ok;
    log << "table4 " << want.scheme << " formula=" << formula << " printed=" << want.formula
        << (ok ? " pass" : " FAIL") << '\n';
  }
  if (!cfg.check) return kExitOk;
  log << "table4: " << passed << '/' << ref.size() << " thresholds match\n";
  return passed == static_cast<int>(ref.size()) ? kExitOk : kExitMismatch;
}

// Every interval between consecutive boundaries (starting at 0 and ending
// with an unbounded one) labelled by the limit reached from its midpoint.
int reproduce_regions(const IntervalReference& ref, const RunConfig& cfg, std::ostream& out,
                      std::ostream& log) {
  const int count = cfg.count;
  const auto seqs = sequences_for(ref.scheme, ref.ratios, count);
  struct Region {
    double ratio, lower, upper;
    int index, label;
  };
  std::vector<Region> regions;
  for (std::size_t row = 0; row < ref.ratios.size(); ++row) {
    std::vector<double> edges{0.0};
    const auto b = boundaries(seqs[row]);
    edges.insert(edges.end(), b.begin(), b.end());
    edges.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      regions.push_back({ref.ratios[row], edges[i], edges[i + 1], static_cast<int>(i), 0});
    }
  }
  parallel_for(regions.size(), [&](std::size_t i) {
    Region& reg = regions[i];
    const double probe = std::isinf(reg.upper) ? reg.lower * 1.05 : 0.5 * (reg.lower + reg.upper);
    const ACParams p = params_for_ratio(ref.scheme, reg.ratio);
    const int max_steps = cfg.steps.value_or(default_iterations(p));
    reg.label = classify_constant_initial(ref.scheme, probe, p, max_steps, cfg.settle_tol).limit_sign;
  });
  CsvWriter csv(out, {"ratio", "index", "lower", "upper", "label"});
  int unresolved = 0, misplaced = 0;
  for (const auto& reg : regions) {
    csv.row({num(reg.ratio), num(reg.index), num(reg.lower), num(reg.upper), num(reg.label)});
    unresolved += reg.label == 0;
    // published figures colour the regions +1, -1, +1, ... outwards from 0
    const int expected = reg.index % 2 == 0 ? 1 : -1;
    if (cfg.check && reg.label != expected) {
      ++misplaced;
      log << ref.id << " ratio=" << num(reg.ratio) << " region " << reg.index << " label=" << reg.label
          << " expected=" << expected << " FAIL\n";
    }
  }
  if (unresolved) log << unresolved << " region(s) did not settle\n";
  if (!cfg.check) return kExitOk;
  log << "regions: " << regions.size() - static_cast<std::size_t>(misplaced) << '/' << regions.size()
      << " labels alternate as published\n";
  return misplaced == 0 ? kExitOk : kExitMismatch;
}

// ---- analyze ------------------------------------------------------------

int analyze_thresholds(const RunConfig& cfg, std::ostream& out) {
  std::vector<SchemeKind> kinds;
  if (cfg.scheme) {
    kinds.push_back(cfg.scheme_kind());
  } else {
    kinds = {SchemeKind::be(), SchemeKind::cn(), SchemeKind::modcn(), SchemeKind::dirk()};
  }
  CsvWriter csv(out, {"scheme", "formula", "dt_max"});
  for (const auto& kind : kinds) {
    const auto t = stability_threshold(kind, cfg.eps);
    csv.row({kind.name(), to_string(t.formula), num(t.dt_max)});
  }
  return kExitOk;
}

int analyze_bifurcations(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const SchemeKind kind = cfg.scheme_kind();
  const double c = cfg.c.value_or(0.0);
  const double dt = cfg.params(kind).dt;
  const double max_k = cfg.k.value_or(4.0);
  if (max_k != std::floor(max_k) || max_k < 0) throw ConfigError("bifurcations: --k is the largest mode and must be an integer");
  Row header{"k"};
  if (cfg.dim == 2) header.push_back("l");
  header.insert(header.end(), {"eps_sq", "eigenfunction", "ambiguous"});
  CsvWriter csv(out, header);
  if (kind.tag == SchemeTag::MODCN) {
    csv.comment("notice: modcn has a unique step for every dt, so no mode bifurcates");
    log << "modcn never bifurcates\n";
    return kExitOk;
  }
  if (1.0 - 3.0 * c * c <= 0.0) {
    csv.comment("notice: 1 - 3c^2 <= 0 at c = " + num(c) + ", so no mode bifurcates");
    log << "no bifurcations: 1 - 3c^2 <= 0\n";
    return kExitOk;
  }
  const auto points =
      enumerate_bifurcations(kind, c, dt, cfg.eps_min, static_cast<int>(max_k), cfg.dim);
  for (const auto& b : points) {
    Row cells{num(b.mode.k(0))};
    if (cfg.dim == 2) cells.push_back(num(b.mode.k(1)));
    cells.insert(cells.end(), {num(b.eps_sq), b.eigenfunction, b.ambiguous ? "1" : "0"});
    csv.row(cells);
  }
  if (points.empty()) csv.comment("notice: no mode bifurcates above eps_min = " + num(cfg.eps_min));
  return kExitOk;
}

int analyze_intervals(const RunConfig& cfg, std::ostream& out) {
  const SchemeKind kind = cfg.scheme_kind();
  const auto seq = interval_sequence(kind, cfg.step_ratio(kind), cfg.count);
  const bool dirk = kind.tag == SchemeTag::DIRK;
  CsvWriter csv(out, dirk ? Row{"index", "r", "s"} : Row{"index", "r"});
  for (std::size_t i = 0; i < seq.r.size(); ++i) {
    Row cells{num(static_cast<int>(i + 1)), num(seq.r[i])};
    if (dirk) cells.push_back(num(seq.s[i]));
    csv.row(cells);
  }
  return kExitOk;
}

int analyze_classify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const SchemeKind kind = cfg.scheme_kind();
  const ACParams p = cfg.params(kind);
  if (!(cfg.rmax >= cfg.rmin)) throw ConfigError("classify needs rmax >= rmin");
  const int max_steps = cfg.steps.value_or(default_iterations(p));
  const auto n = static_cast<std::size_t>(cfg.samples);
  std::vector<ClassificationResult> results(n);
  parallel_for(n, [&](std::size_t i) {
    const double r = n == 1 ? cfg.rmin
                            : cfg.rmin + (cfg.rmax - cfg.rmin) * static_cast<double>(i) / static_cast<double>(n - 1);
    results[i] = classify_constant_initial(kind, r, p, max_steps, cfg.settle_tol);
  });
  CsvWriter csv(out, {"r", "limit", "settle_step", "sign_changes", "pattern"});
  int unresolved = 0;
  for (const auto& res : results) {
    // sign of r, then the sign after each step up to settling
    std::string pattern(1, sign_char(sign_of(res.r)));
    const std::size_t shown = res.settle_step > 0 ? static_cast<std::size_t>(res.settle_step) : res.signs.size();
    for (std::size_t s = 0; s < std::min(shown, res.signs.size()); ++s) pattern += sign_char(res.signs[s]);
    csv.row({num(res.r), num(res.limit_sign), num(res.settle_step), num(res.sign_changes()), pattern});
    unresolved += res.limit_sign == 0;
  }
  if (unresolved) log << unresolved << " sample(s) did not settle within " << max_steps << " steps\n";
  return kExitOk;
}

int analyze_perturb(const RunConfig& cfg, std::ostream& out) {
  const SchemeKind kind = cfg.scheme_kind();
  if (kind.tag == SchemeTag::BE) throw ConfigError("perturb supports cn, modcn and dirk2");
  if (!cfg.c) throw ConfigError("perturb needs --c, the constant after the step");
  const double c = *cfg.c;
  const ACParams p = cfg.params(kind);
  std::optional<double> l = cfg.l;
  if (!l && cfg.dim == 2) l = 0.0;
  const ModeIndex mode = mode_from(cfg.k.value_or(1.0), l);
  const PreimageSet set = preimage_constants(kind, c, p);

  if (kind.tag != SchemeTag::DIRK) {
    std::vector<double> rs = cfg.r ? std::vector<double>{*cfg.r} : set.roots;
    CsvWriter csv(out, {"c", "r", "mode", "pole", "b"});
    for (double r : rs) {
      const auto g = perturbation_gain(kind, c, r, mode, p);
      csv.row({num(c), num(r), mode.descriptor(), g.pole ? "1" : "0", num(g.values.at(0))});
    }
    return kExitOk;
  }

  // DIRK gains depend on the stage constants, so r must name a preimage.
  std::vector<std::size_t> picks;
  if (cfg.r) {
    std::size_t best = set.roots.size();
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
      if (best == set.roots.size() || std::abs(set.roots[i] - *cfg.r) < std::abs(set.roots[best] - *cfg.r)) best = i;
    }
    if (best == set.roots.size() || std::abs(set.roots[best] - *cfg.r) > 1e-3 * std::max(1.0, std::abs(*cfg.r))) {
      throw ConfigError("r = " + num(*cfg.r) + " is not a constant preimage of c = " + num(c));
    }
    picks.push_back(best);
  } else {
    for (std::size_t i = 0; i < set.roots.size(); ++i) picks.push_back(i);
  }
  CsvWriter csv(out, {"c", "r", "stage2", "stage1", "mode", "pole", "b2", "b1", "b0"});
  for (std::size_t i : picks) {
    const StageChain& chain = set.chains[i];
    const double c1 = chain.stages.at(0), c2 = chain.stages.at(1);
    const auto g = dirk_perturbation_gains(c2, c1, mode, p);
    csv.row({num(c), num(set.roots[i]), num(c2), num(c1), mode.descriptor(), g.pole ? "1" : "0",
             num(g.values.at(0)), num(g.values.at(1)), num(g.values.at(2))});
  }
  return kExitOk;
}

// ---- preimage -----------------------------------------------------------

double forward_mismatch(const SchemeKind& kind, double root, double c, const ACParams& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& img : scalar_map(kind, root, p)) best = std::min(best, std::abs(img.value - c));
  return best;
}

int preimage_constant(const SchemeKind& kind, double c, const ACParams& p, std::ostream& out,
                      std::ostream& log) {
  const PreimageSet set = preimage_constants(kind, c, p);
  const bool dirk = kind.tag == SchemeTag::DIRK;
  Row header{"index", "root", "forward_mismatch", "discriminant", "discriminant_sign"};
  if (dirk) header.insert(header.end(), {"stage1", "stage2"});
  CsvWriter csv(out, header);
  for (std::size_t i = 0; i < set.roots.size(); ++i) {
    const double root = set.roots[i];
    Row cells{num(static_cast<int>(i + 1)), num(root), num(forward_mismatch(kind, root, c, p))};
    if (set.cubics.empty()) {
      cells.insert(cells.end(), {"", ""});  // linear in the unknown
    } else {
      const CubicRoots& cubic = set.cubics.at(dirk ? set.chains[i].cubic : 0);
      cells.insert(cells.end(), {num(cubic.discriminant), num(cubic.discriminant_sign)});
    }
    if (dirk) cells.insert(cells.end(), {num(set.chains[i].stages.at(0)), num(set.chains[i].stages.at(1))});
    csv.row(cells);
  }
  log << set.roots.size() << " real constant preimage(s) of " << num(c) << '\n';
  return kExitOk;
}

double pick_seed(const SchemeKind& kind, double c, const ACParams& p, std::optional<double> r) {
  const PreimageSet set = preimage_constants(kind, c, p);
  if (set.roots.empty()) throw AnalysisError("no real constant preimage of " + num(c));
  if (!r) {
    if (set.roots.size() == 1) return set.roots.front();
    std::string list;
    for (double v : set.roots) list += (list.empty() ? "" : ", ") + num(v);
    throw ConfigError(num(c) + " has " + std::to_string(set.roots.size()) +
                      " constant preimages (" + list + "); choose one with --r");
  }
  // snap a rounded r onto the exact branch
  return *std::min_element(set.roots.begin(), set.roots.end(),
                           [&](double a, double b) { return std::abs(a - *r) < std::abs(b - *r); });
}

int preimage_mode(const SchemeKind& kind, const FieldSpec& spec, const RunConfig& cfg, const ACParams& p,
                  std::ostream& out, std::ostream& log) {
  const GridSpec grid = make_grid(cfg.dim, cfg.points());
  if (spec.mode->dim() != grid.dim) {
    throw ConfigError("target mode has " + std::to_string(spec.mode->dim()) + " indices but --dim is " +
                      std::to_string(grid.dim));
  }
  const double seed_value = pick_seed(kind, spec.value, p, cfg.r);
  HomotopyConfig h;
  h.delta_start = cfg.delta0;
  h.delta_end = cfg.delta1.value_or(spec.delta);
  h.steps = cfg.steps.value_or(32);
  const ScalarField shape = eval_mode(*spec.mode, grid);
  const auto res = preimage_field(kind, spec.value, shape, ScalarField::constant(grid, seed_value), p, h,
                                  cfg.newton());

  Row header = grid.dim == 1 ? Row{"x"} : Row{"x1", "x2"};
  header.insert(header.end(), {"phi_n", "target"});
  CsvWriter csv(out, header);
  const int n = grid.points_per_axis;
  for (std::size_t idx = 0; idx < res.phi_n.size(); ++idx) {
    const auto i = static_cast<int>(idx);
    Row cells = grid.dim == 1 ? Row{num(grid.node(i))} : Row{num(grid.node(i / n)), num(grid.node(i % n))};
    const auto e = static_cast<Eigen::Index>(idx);
    cells.insert(cells.end(), {num(res.phi_n.values()[e]), num(res.target.values()[e])});
    csv.row(cells);
  }
  csv.comment("completed=" + std::string(res.completed ? "1" : "0") + " seed=" + num(seed_value) +
              " delta=" + num(res.last_good_delta) + " forward_residual=" + num(res.forward_residual));
  log << "seed " << num(seed_value) << ", reached delta " << num(res.last_good_delta) << " of "
      << num(h.delta_end) << ", forward residual " << num(res.forward_residual) << '\n';
  if (!res.completed) {
    log << "continuation failed: " << res.report.failure << '\n';
    return kExitSolver;
  }
  if (!(res.forward_residual <= kForwardCheckTol)) {
    log << "forward check missed the target by " << num(res.forward_residual) << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int cmd_reproduce(const std::string& id, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (id == "table1" || id == "table2" || id == "table3") {
    return reproduce_intervals(interval_reference(id), cfg, out, log);
  }
  if (id == "table4") return reproduce_thresholds(cfg, out, log);
  if (id == "fig1-data") return reproduce_regions(interval_reference("table1"), cfg, out, log);
  if (id == "fig5-data") return reproduce_regions(interval_reference("table3"), cfg, out, log);
  throw ConfigError("unknown reproduce id '" + id +
                    "' (expected table1, table2, table3, table4, fig1-data or fig5-data)");
}

int cmd_simulate(const RunConfig& cfg, const std::string& initial, std::ostream& out, std::ostream& log) {
  const SchemeKind kind = cfg.scheme_kind();
  const ACParams p = cfg.params(kind);
  const FieldSpec spec = parse_field_spec(initial);
  const GridSpec grid = make_grid(cfg.dim, cfg.points());
  SimulateOptions opt;
  opt.settle_tol = cfg.settle_tol;
  opt.step.newton = cfg.newton();
  const Trajectory traj = simulate(kind, spec.build(grid), cfg.steps.value_or(100), p, opt);

  CsvWriter csv(out, {"step", "t", "min", "max", "center", "l2", "sign"});
  for (const auto& s : traj.summaries) {
    csv.row({num(s.step), num(s.time), num(s.min), num(s.max), num(s.center), num(s.l2),
             num(sign_of(s.center))});
  }
  csv.comment("settle_step=" + num(traj.settle_step) + " limit=" + num(traj.limit_sign) +
              " center_settle_step=" + num(traj.center_settle_step) +
              " center_limit=" + num(traj.center_limit_sign) +
              " center_sign_changes=" + num(traj.center_sign_changes()) +
              " status=" + (traj.failed ? "failed" : "ok"));
  if (traj.failed) {
    log << "simulation stopped: " << traj.diagnostic << '\n';
    return kExitSolver;
  }
  log << (traj.settled ? "settled at " + num(traj.limit_sign) + " from step " + num(traj.settle_step)
                       : std::string("did not settle"))
      << '\n';
  return kExitOk;
}

int cmd_analyze(const std::string& what, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (what == "thresholds") return analyze_thresholds(cfg, out);
  if (what == "bifurcations") return analyze_bifurcations(cfg, out, log);
  if (what == "intervals") return analyze_intervals(cfg, out);
  if (what == "classify") return analyze_classify(cfg, out, log);
  if (what == "perturb") return analyze_perturb(cfg, out);
  throw ConfigError("unknown analysis '" + what +
                    "' (expected thresholds, bifurcations, intervals, classify or perturb)");
}

int cmd_preimage(const RunConfig& cfg, const std::string& target, std::ostream& out, std::ostream& log) {
  const SchemeKind kind = cfg.scheme_kind();
  const ACParams p = cfg.params(kind);
  const FieldSpec spec = parse_field_spec(target);
  if (!spec.mode) return preimage_constant(kind, spec.value, p, out, log);
  return preimage_mode(kind, spec, cfg, p, out, log);
}

}  // namespace acstab::cli
