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

#include "acstab_cli/app.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acstab_cli/commands.hpp"
#include "acstab_cli/config.hpp"

namespace acstab::cli {
namespace {

constexpr const char* kReproduceColumns =
    "CSV columns:\n"
    "  table1, table2   ratio,r1,r2,r3,r4\n"
    "  table3           ratio,r1,s1,r2,s2,r3,s3,r4,s4\n"
    "  table4           scheme,formula,eps2_multiple,dt_max\n"
    "  fig1-data, fig5-data  ratio,index,lower,upper,label  (label: limit +1/-1, 0 if unsettled)\n"
    "--check compares against the published values (tolerance 1e-3*max(1,|v|)) and exits 4 on a mismatch.";

constexpr const char* kSimulateColumns =
    "CSV columns: step,t,min,max,center,l2,sign\n"
    "A closing '#' line reports settle_step, limit, center_settle_step, center_limit,\n"
    "center_sign_changes and status. Initial field: const:<v> or const+mode:<v>,<delta>,<k[,l]>.";

constexpr const char* kAnalyzeColumns =
    "CSV columns:\n"
    "  thresholds    scheme,formula,dt_max\n"
    "  bifurcations  k[,l],eps_sq,eigenfunction,ambiguous  (--c state, --k largest mode, --eps-min floor)\n"
    "  intervals     index,r[,s]\n"
    "  classify      r,limit,settle_step,sign_changes,pattern  (--rmin, --rmax, --samples, --steps)\n"
    "  perturb       c,r,mode,pole,b   or for dirk2   c,r,stage2,stage1,mode,pole,b2,b1,b0";

constexpr const char* kPreimageColumns =
    "Target: const:<c> or const+mode:<c>,<delta>,<k[,l]>.\n"
    "CSV columns:\n"
    "  constant  index,root,forward_mismatch,discriminant,discriminant_sign[,stage1,stage2]\n"
    "  field     x (or x1,x2),phi_n,target, then a '#' line with completed, seed, delta and\n"
    "            forward_residual. --r picks the constant branch to continue from.\n"
    "Exit 3 when continuation stalls (the last converged field is still written) or when the\n"
    "forward check misses the target by more than 1e-6.";

// Flags are registered on every subcommand; each remembers how to overlay
// itself onto a RunConfig when it was actually given.
class FlagSet {
 public:
  template <typename T, typename Set>
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help, Set set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    apply_.push_back([opt, value, set](RunConfig& cfg) {
      if (opt->count() > 0) set(cfg, *value);
    });
    return opt;
  }

  void apply(RunConfig& cfg) const {
    for (const auto& f : apply_) f(cfg);
  }

 private:
  std::vector<std::function<void(RunConfig&)>> apply_;
};

struct Common {
  std::string config;
  bool check = false;
};

void add_common(CLI::App* app, FlagSet& flags, Common& common) {
  app->add_option("--config", common.config, "JSON file with RunConfig fields; flags override it");
  app->add_flag("--check", common.check, "compare against embedded reference values");
  flags.add<std::string>(app, "--scheme", "be, cn, modcn or dirk2",
                         [](RunConfig& c, const std::string& v) { c.scheme = v; })
      ->check(CLI::IsMember({"be", "cn", "modcn", "dirk2"}, CLI::ignore_case));
  flags.add<double>(app, "--eps", "interface width (default 0.1)", [](RunConfig& c, double v) { c.eps = v; });
  auto* dt = flags.add<double>(app, "--dt", "time step", [](RunConfig& c, double v) {
    c.dt = v;
    c.ratio.reset();  // a flag overrides the other form from --config
  });
  auto* ratio = flags.add<double>(app, "--ratio", "dt/(2 eps^2), or dt/(4 eps^2) for dirk2; excludes --dt",
                                  [](RunConfig& c, double v) {
                                    c.ratio = v;
                                    c.dt.reset();
                                  });
  dt->excludes(ratio);
  flags.add<int>(app, "--dim", "1 or 2", [](RunConfig& c, int v) { c.dim = v; });
  flags.add<int>(app, "--n", "grid points per axis (default 257 in 1D, 65 in 2D)",
                 [](RunConfig& c, int v) { c.n = v; });
  flags.add<int>(app, "--steps", "time steps, continuation steps or iteration cap",
                 [](RunConfig& c, int v) { c.steps = v; });
  flags.add<double>(app, "--k", "mode number along x1 (integer or half)", [](RunConfig& c, double v) { c.k = v; });
  flags.add<double>(app, "--l", "mode number along x2", [](RunConfig& c, double v) { c.l = v; });
  flags.add<double>(app, "--delta0", "first continuation amplitude (default 1e-3)",
                    [](RunConfig& c, double v) { c.delta0 = v; });
  flags.add<double>(app, "--delta1", "final continuation amplitude (default: the target's delta)",
                    [](RunConfig& c, double v) { c.delta1 = v; });
  flags.add<int>(app, "--count", "interval points per family (default 4)", [](RunConfig& c, int v) { c.count = v; });
  flags.add<std::string>(app, "--out", "CSV destination (default stdout)",
                         [](RunConfig& c, const std::string& v) { c.out = v; });
  flags.add<double>(app, "--c", "constant state after the step", [](RunConfig& c, double v) { c.c = v; });
  flags.add<double>(app, "--r", "constant state before the step", [](RunConfig& c, double v) { c.r = v; });
  flags.add<double>(app, "--rmin", "classify: smallest initial constant", [](RunConfig& c, double v) { c.rmin = v; });
  flags.add<double>(app, "--rmax", "classify: largest initial constant", [](RunConfig& c, double v) { c.rmax = v; });
  flags.add<int>(app, "--samples", "classify: number of initial constants", [](RunConfig& c, int v) { c.samples = v; });
  flags.add<double>(app, "--eps-min", "bifurcations: smallest eps reported", [](RunConfig& c, double v) { c.eps_min = v; });
  flags.add<double>(app, "--settle-tol", "distance to +-1 counted as settled", [](RunConfig& c, double v) { c.settle_tol = v; });
  flags.add<double>(app, "--newton-tol", "Newton residual tolerance", [](RunConfig& c, double v) { c.newton_tol = v; });
  flags.add<int>(app, "--newton-max-iter", "Newton iteration cap", [](RunConfig& c, int v) { c.newton_max_iter = v; });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability and robustness analysis of implicit Allen-Cahn time steppers."};
  app.require_subcommand(1, 1);
  app.footer("Exit codes: 0 ok, 2 configuration error, 3 solver failure, 4 check mismatch.\n"
             "ACSTAB_THREADS caps the number of worker threads.");

  FlagSet flags;
  Common common;
  std::string id, initial, what, target;

  CLI::App* reproduce = app.add_subcommand("reproduce", "regenerate a published table or figure data set");
  reproduce->add_option("id", id, "table1, table2, table3, table4, fig1-data or fig5-data")->required();
  reproduce->footer(kReproduceColumns);

  CLI::App* sim = app.add_subcommand("simulate", "march the scheme from an initial field");
  sim->add_option("initial", initial, "initial field spec")->required();
  sim->footer(kSimulateColumns);

  CLI::App* analyze = app.add_subcommand("analyze", "step-size, bifurcation and constant-state analyses");
  analyze->add_option("what", what, "thresholds, bifurcations, intervals, classify or perturb")->required();
  analyze->footer(kAnalyzeColumns);

  CLI::App* pre = app.add_subcommand("preimage", "find the states a step maps onto a target");
  pre->add_option("target", target, "target field spec")->required();
  pre->footer(kPreimageColumns);

  for (CLI::App* sub : {reproduce, sim, analyze, pre}) add_common(sub, flags, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg;
    if (!common.config.empty()) apply_json_file(cfg, common.config);
    flags.apply(cfg);
    if (common.check) cfg.check = true;
    cfg.validate();

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
    }
    std::ostream& sink = cfg.out.empty() ? out : file;

    int code = kExitOk;
    if (reproduce->parsed()) code = cmd_reproduce(id, cfg, sink, err);
    else if (sim->parsed()) code = cmd_simulate(cfg, initial, sink, err);
    else if (analyze->parsed()) code = cmd_analyze(what, cfg, sink, err);
    else code = cmd_preimage(cfg, target, sink, err);
    sink.flush();
    return code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const AnalysisError& e) {
    err << "analysis failed: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace acstab::cli
