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

#ifndef ACSTAB_FIELD_HPP
#define ACSTAB_FIELD_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace acstab {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Raised for invalid user-supplied configuration (bad grid, bad params,
/// mismatched dimensions).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an analysis invariant that should hold by construction is
/// violated at runtime (e.g. a cubic expected to have one real root has three).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform node-centred grid on [-1,1]^dim.
struct GridSpec {
  int dim = 1;
  int points_per_axis = 3;

  double spacing() const { return 2.0 / (points_per_axis - 1); }
  double node(int j) const { return -1.0 + j * spacing(); }
  std::size_t size() const;
  /// Flat index of the node closest to the origin.
  std::size_t center_index() const;

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int n);

/// Default resolutions: 257 nodes in 1D, 65 per axis in 2D.
int default_points(int dim);

struct ACParams {
  double eps = 0.1;
  double dt = 0.01;

  void validate() const;
};

/// Node values on a grid, stored row-major (last axis fastest).
class ScalarField {
 public:
  ScalarField(GridSpec grid, Vector values);

  static ScalarField constant(const GridSpec& grid, double value);

  const GridSpec& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  double min() const { return values_.minCoeff(); }
  double max() const { return values_.maxCoeff(); }
  double center_value() const { return values_[static_cast<Eigen::Index>(grid_.center_index())]; }
  /// Trapezoid-weighted discrete L2 norm over [-1,1]^dim.
  double l2_norm() const;
  double max_abs() const { return values_.cwiseAbs().maxCoeff(); }
  /// Infinity-norm distance to the constant `level`.
  double distance_to(double level) const;

 private:
  GridSpec grid_;
  Vector values_;
};

/// Trapezoidal quadrature weights for every node of `grid`.
Vector trapezoid_weights(const GridSpec& grid);

/// Per-axis mode numbers k_i, each a nonnegative multiple of 1/2. Integer
/// entries select cos(pi k x), half-integer entries sin(pi k x).
class ModeIndex {
 public:
  ModeIndex() = default;
  /// Build from 2*k_i values, e.g. {1} is k = 1/2 and {2, 2} is (1, 1).
  static ModeIndex from_twice(std::vector<int> twice_k);
  static ModeIndex from_integers(std::initializer_list<int> k);
  static ModeIndex from_integers(const std::vector<int>& k);

  int dim() const { return static_cast<int>(twice_.size()); }
  double k(int axis) const { return 0.5 * twice_[static_cast<std::size_t>(axis)]; }
  int twice_k(int axis) const { return twice_[static_cast<std::size_t>(axis)]; }
  bool is_cosine(int axis) const { return twice_[static_cast<std::size_t>(axis)] % 2 == 0; }
  bool all_integer() const;
  bool any_half_integer() const { return !all_integer(); }
  /// sum_i (pi k_i)^2, the Neumann eigenvalue magnitude of the mode.
  double eigenvalue() const;
  /// Human readable descriptor such as "cos(1*pi*x1)*sin(0.5*pi*x2)".
  std::string descriptor() const;

  bool operator==(const ModeIndex&) const = default;

 private:
  explicit ModeIndex(std::vector<int> twice) : twice_(std::move(twice)) {}
  std::vector<int> twice_;
};

/// Lower-triangular Runge-Kutta coefficients.
struct ButcherTableau {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  int stages() const { return static_cast<int>(b.size()); }
  double max_diagonal() const;
  void validate() const;

  /// The two-stage array a = [[1/4,0],[1/2,1/4]], b = [1/2,1/2], c = [1/4,3/4].
  static ButcherTableau dirk2();
};

/// Sparse second-order Neumann Laplacian with mirror ghosts.
SparseMatrix laplacian_matrix(const GridSpec& grid);

ScalarField apply_laplacian(const ScalarField& u);

ScalarField eval_mode(const ModeIndex& k, const GridSpec& grid);

/// Laplacian(u) - (u^3 - u) / eps^2.
ScalarField ac_rhs(const ScalarField& u, const ACParams& p);

/// Pointwise reaction term -(u^3 - u) / eps^2 on a raw vector.
Vector reaction(const Vector& u, double eps);

}  // namespace acstab

#endif  // ACSTAB_FIELD_HPP
