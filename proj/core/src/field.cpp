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

#include "acstab/field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace acstab {

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int axis = 0; axis < dim; ++axis) total *= static_cast<std::size_t>(points_per_axis);
  return total;
}

std::size_t GridSpec::center_index() const {
  const auto mid = static_cast<std::size_t>(points_per_axis / 2);
  const auto n = static_cast<std::size_t>(points_per_axis);
  return dim == 1 ? mid : mid * n + mid;
}

GridSpec make_grid(int dim, int n) {
  if (dim != 1 && dim != 2) {
    throw ConfigError("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (n < 3) {
    throw ConfigError("grid needs at least 3 points per axis, got " + std::to_string(n));
  }
  return GridSpec{dim, n};
}

int default_points(int dim) { return dim == 2 ? 65 : 257; }

void ACParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be positive and finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
}

ScalarField::ScalarField(GridSpec grid, Vector values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
    throw ConfigError("field length " + std::to_string(values_.size()) +
                      " does not match grid size " + std::to_string(grid_.size()));
  }
  if (!values_.allFinite()) throw ConfigError("field contains non-finite values");
}

ScalarField ScalarField::constant(const GridSpec& grid, double value) {
  return ScalarField(grid, Vector::Constant(static_cast<Eigen::Index>(grid.size()), value));
}

double ScalarField::l2_norm() const {
  const Vector w = trapezoid_weights(grid_);
  return std::sqrt(w.dot(values_.cwiseAbs2()));
}

double ScalarField::distance_to(double level) const {
  return (values_.array() - level).abs().maxCoeff();
}

Vector trapezoid_weights(const GridSpec& grid) {
  const int n = grid.points_per_axis;
  const double h = grid.spacing();
  Vector w1(n);
  w1.setConstant(h);
  w1[0] = w1[n - 1] = 0.5 * h;
  if (grid.dim == 1) return w1;
  Vector w(static_cast<Eigen::Index>(grid.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i * n + j] = w1[i] * w1[j];
  return w;
}

ModeIndex ModeIndex::from_twice(std::vector<int> twice_k) {
  if (twice_k.empty()) throw ConfigError("mode index needs at least one axis");
  for (int t : twice_k) {
    if (t < 0) throw ConfigError("mode numbers must be nonnegative");
  }
  return ModeIndex(std::move(twice_k));
}

ModeIndex ModeIndex::from_integers(std::initializer_list<int> k) {
  return from_integers(std::vector<int>(k));
}

ModeIndex ModeIndex::from_integers(const std::vector<int>& k) {
  std::vector<int> twice;
  twice.reserve(k.size());
  for (int v : k) twice.push_back(2 * v);
  return from_twice(std::move(twice));
}

bool ModeIndex::all_integer() const {
  for (int t : twice_) {
    if (t % 2 != 0) return false;
  }
  return true;
}

double ModeIndex::eigenvalue() const {
  double sum = 0.0;
  for (int t : twice_) {
    const double kpi = 0.5 * t * std::numbers::pi;
    sum += kpi * kpi;
  }
  return sum;
}

std::string ModeIndex::descriptor() const {
  std::ostringstream out;
  for (std::size_t axis = 0; axis < twice_.size(); ++axis) {
    if (axis > 0) out << '*';
    out << (twice_[axis] % 2 == 0 ? "cos(" : "sin(") << 0.5 * twice_[axis] << "*pi*x" << axis + 1
        << ')';
  }
  return out.str();
}

double ButcherTableau::max_diagonal() const { return a.diagonal().maxCoeff(); }

void ButcherTableau::validate() const {
  const auto s = b.size();
  if (s < 1) throw ConfigError("tableau needs at least one stage");
  if (a.rows() != s || a.cols() != s || c.size() != s) {
    throw ConfigError("tableau dimensions are inconsistent");
  }
  bool implicit = false;
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = i + 1; j < s; ++j) {
      if (a(i, j) != 0.0) throw ConfigError("tableau must be lower triangular");
    }
    if (a(i, i) != 0.0) implicit = true;
  }
  if (!implicit) throw ConfigError("tableau needs at least one nonzero diagonal entry");
}

ButcherTableau ButcherTableau::dirk2() {
  ButcherTableau t;
  t.a.resize(2, 2);
  t.a << 0.25, 0.0, 0.5, 0.25;
  t.b.resize(2);
  t.b << 0.5, 0.5;
  t.c.resize(2);
  t.c << 0.25, 0.75;
  return t;
}

namespace {

// 1D Neumann stencil; the ghost at either end mirrors the first interior node.
std::vector<Eigen::Triplet<double>> axis_stencil(int n, double h) {
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(3 * n));
  for (int j = 0; j < n; ++j) {
    t.emplace_back(j, j, -2.0 * inv_h2);
    if (j == 0) {
      t.emplace_back(j, 1, 2.0 * inv_h2);
    } else if (j == n - 1) {
      t.emplace_back(j, n - 2, 2.0 * inv_h2);
    } else {
      t.emplace_back(j, j - 1, inv_h2);
      t.emplace_back(j, j + 1, inv_h2);
    }
  }
  return t;
}

}  // namespace

SparseMatrix laplacian_matrix(const GridSpec& grid) {
  const int n = grid.points_per_axis;
  const auto stencil = axis_stencil(n, grid.spacing());
  const auto size = static_cast<Eigen::Index>(grid.size());
  SparseMatrix lap(size, size);
  if (grid.dim == 1) {
    lap.setFromTriplets(stencil.begin(), stencil.end());
    return lap;
  }
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(stencil.size() * 2 * static_cast<std::size_t>(n));
  for (int outer = 0; outer < n; ++outer) {
    for (const auto& e : stencil) {
      // x2 direction (fastest index) then x1 direction.
      t.emplace_back(outer * n + e.row(), outer * n + e.col(), e.value());
      t.emplace_back(e.row() * n + outer, e.col() * n + outer, e.value());
    }
  }
  lap.setFromTriplets(t.begin(), t.end());
  return lap;
}

ScalarField apply_laplacian(const ScalarField& u) {
  const SparseMatrix lap = laplacian_matrix(u.grid());
  return ScalarField(u.grid(), lap * u.values());
}

ScalarField eval_mode(const ModeIndex& k, const GridSpec& grid) {
  if (k.dim() != grid.dim) {
    throw ConfigError("mode index has " + std::to_string(k.dim()) + " axes but grid has " +
                      std::to_string(grid.dim));
  }
  const int n = grid.points_per_axis;
  auto factor = [&](int axis, int j) {
    const double arg = std::numbers::pi * k.k(axis) * grid.node(j);
    return k.is_cosine(axis) ? std::cos(arg) : std::sin(arg);
  };
  Vector v(static_cast<Eigen::Index>(grid.size()));
  if (grid.dim == 1) {
    for (int j = 0; j < n; ++j) v[j] = factor(0, j);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = factor(0, i) * factor(1, j);
  }
  return ScalarField(grid, std::move(v));
}

Vector reaction(const Vector& u, double eps) {
  return -(u.array().cube() - u.array()) / (eps * eps);
}

ScalarField ac_rhs(const ScalarField& u, const ACParams& p) {
  p.validate();
  const SparseMatrix lap = laplacian_matrix(u.grid());
  return ScalarField(u.grid(), lap * u.values() + reaction(u.values(), p.eps));
}

}  // namespace acstab
