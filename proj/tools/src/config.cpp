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

#include "acstab_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace acstab::cli {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double parse_double(std::string_view s, std::string_view what) {
  // from_chars rejects a leading '+', which people do type
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("cannot read " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto at = s.find(sep);
    parts.push_back(s.substr(0, at));
    if (at == std::string_view::npos) return parts;
    s.remove_prefix(at + 1);
  }
}

int twice_of(double k, const char* name) {
  const double t = 2.0 * k;
  require(std::isfinite(t) && t >= 0.0 && t == std::round(t) && t < 1e6,
          std::string(name) + " must be a nonnegative integer or half-integer");
  return static_cast<int>(t);
}

template <typename T>
T read(const nlohmann::json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (scheme) (void)SchemeKind::parse(*scheme);
  require(positive(eps), "eps must be positive");
  require(!(dt && ratio), "dt and ratio are mutually exclusive");
  if (dt) require(positive(*dt), "dt must be positive");
  if (ratio) require(positive(*ratio), "ratio must be positive");
  require(dim == 1 || dim == 2, "dim must be 1 or 2");
  if (n) require(*n >= 3, "n must be at least 3");
  if (steps) require(*steps >= 1, "steps must be positive");
  if (k) (void)twice_of(*k, "k");
  if (l) (void)twice_of(*l, "l");
  require(std::isfinite(delta0), "delta0 must be finite");
  if (delta1) require(std::isfinite(*delta1), "delta1 must be finite");
  require(count >= 1, "count must be positive");
  require(positive(newton_tol), "newton tol must be positive");
  require(newton_max_iter >= 1, "newton max_iter must be positive");
  if (c) require(std::isfinite(*c), "c must be finite");
  if (r) require(std::isfinite(*r), "r must be finite");
  require(std::isfinite(rmin) && std::isfinite(rmax), "rmin and rmax must be finite");
  require(samples >= 1, "samples must be positive");
  require(positive(eps_min), "eps_min must be positive");
  require(positive(settle_tol), "settle_tol must be positive");
}

SchemeKind RunConfig::scheme_kind() const {
  require(scheme.has_value(), "this command needs --scheme");
  return SchemeKind::parse(*scheme);
}

namespace {
double ratio_factor(const SchemeKind& kind) { return kind.tag == SchemeTag::DIRK ? 4.0 : 2.0; }
}  // namespace

ACParams RunConfig::params(const SchemeKind& kind) const {
  require(dt.has_value() != ratio.has_value(), "supply exactly one of --dt and --ratio");
  const double step = dt ? *dt : ratio_factor(kind) * *ratio * eps * eps;
  return ACParams{eps, step};
}

double RunConfig::step_ratio(const SchemeKind& kind) const {
  require(dt.has_value() != ratio.has_value(), "supply exactly one of --dt and --ratio");
  return ratio ? *ratio : *dt / (ratio_factor(kind) * eps * eps);
}

int RunConfig::points() const { return n ? *n : default_points(dim); }

NewtonConfig RunConfig::newton() const {
  NewtonConfig cfg;
  cfg.tol = newton_tol;
  cfg.max_iter = newton_max_iter;
  return cfg;
}

void apply_json(RunConfig& cfg, std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "scheme") cfg.scheme = read<std::string>(v, k);
    else if (key == "eps") cfg.eps = read<double>(v, k);
    else if (key == "dt") cfg.dt = read<double>(v, k);
    else if (key == "ratio") cfg.ratio = read<double>(v, k);
    else if (key == "dim") cfg.dim = read<int>(v, k);
    else if (key == "n") cfg.n = read<int>(v, k);
    else if (key == "steps") cfg.steps = read<int>(v, k);
    else if (key == "k") cfg.k = read<double>(v, k);
    else if (key == "l") cfg.l = read<double>(v, k);
    else if (key == "delta0") cfg.delta0 = read<double>(v, k);
    else if (key == "delta1") cfg.delta1 = read<double>(v, k);
    else if (key == "count") cfg.count = read<int>(v, k);
    else if (key == "out") cfg.out = read<std::string>(v, k);
    else if (key == "check") cfg.check = read<bool>(v, k);
    else if (key == "c") cfg.c = read<double>(v, k);
    else if (key == "r") cfg.r = read<double>(v, k);
    else if (key == "rmin") cfg.rmin = read<double>(v, k);
    else if (key == "rmax") cfg.rmax = read<double>(v, k);
    else if (key == "samples") cfg.samples = read<int>(v, k);
    else if (key == "eps_min") cfg.eps_min = read<double>(v, k);
    else if (key == "settle_tol") cfg.settle_tol = read<double>(v, k);
    else if (key == "newton") {
      require(v.is_object(), "config key 'newton' must be an object");
      for (const auto& [nk, nv] : v.items()) {
        if (nk == "tol") cfg.newton_tol = read<double>(nv, "newton.tol");
        else if (nk == "max_iter") cfg.newton_max_iter = read<int>(nv, "newton.max_iter");
        else throw ConfigError("unknown config key 'newton." + nk + "'");
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_json_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_json(cfg, text.str());
}

ModeIndex mode_from(double k, std::optional<double> l) {
  std::vector<int> twice{twice_of(k, "k")};
  if (l) twice.push_back(twice_of(*l, "l"));
  return ModeIndex::from_twice(std::move(twice));
}

ScalarField FieldSpec::build(const GridSpec& grid) const {
  ScalarField f = ScalarField::constant(grid, value);
  if (mode) {
    require(mode->dim() == grid.dim, "mode has " + std::to_string(mode->dim()) +
                                         " indices but the grid is " + std::to_string(grid.dim) +
                                         "-dimensional (set --dim)");
    f.values() += delta * eval_mode(*mode, grid).values();
  }
  return f;
}

FieldSpec parse_field_spec(std::string_view text) {
  FieldSpec spec;
  const auto colon = text.find(':');
  require(colon != std::string_view::npos, "field spec '" + std::string(text) +
                                               "' must look like const:<v> or const+mode:<v>,<delta>,<k[,l]>");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "const") {
    spec.value = parse_double(body, "constant");
    require(std::isfinite(spec.value), "constant must be finite");
    return spec;
  }
  require(kind == "const+mode", "unknown field spec kind '" + std::string(kind) + "'");
  const auto parts = split(body, ',');
  require(parts.size() == 3 || parts.size() == 4,
          "const+mode takes <v>,<delta>,<k> or <v>,<delta>,<k>,<l>");
  spec.value = parse_double(parts[0], "constant");
  spec.delta = parse_double(parts[1], "delta");
  require(std::isfinite(spec.value) && std::isfinite(spec.delta), "field spec values must be finite");
  const double k = parse_double(parts[2], "k");
  std::optional<double> l;
  if (parts.size() == 4) l = parse_double(parts[3], "l");
  spec.mode = mode_from(k, l);
  return spec;
}

}  // namespace acstab::cli
