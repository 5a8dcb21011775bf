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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "acstab/nonlinear.hpp"
#include "acstab/schemes.hpp"

namespace {

using acstab::HomotopyConfig;
using acstab::NewtonConfig;
using acstab::SparseMatrix;
using acstab::Vector;

SparseMatrix diag(const Vector& d) {
  SparseMatrix m(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = d[i];
  return m;
}

TEST(Newton, ScalarCubic) {
  auto res = [](const Vector& u) { return Vector((u.array().cube() + u.array() - 1.0).matrix()); };
  auto jac = [](const Vector& u) { return diag((3.0 * u.array().square() + 1.0).matrix()); };
  const auto out = acstab::newton_solve(res, jac, Vector::Constant(1, 1.0));
  ASSERT_TRUE(out.report.converged);
  EXPECT_NEAR(out.solution[0], 0.6823278038280193, 1e-10);
  EXPECT_LE(out.report.residual, 1e-10);
}

TEST(Newton, LinearProblemOneIteration) {
  auto res = [](const Vector& u) { return Vector(u.array() - 1.0); };
  auto jac = [](const Vector& u) { return diag(Vector::Ones(u.size())); };
  const auto out = acstab::newton_solve(res, jac, Vector::Constant(10, -3.7));
  ASSERT_TRUE(out.report.converged);
  EXPECT_EQ(out.report.iterations, 1);
  EXPECT_LE((out.solution.array() - 1.0).abs().maxCoeff(), 1e-15);
}

TEST(Newton, BackwardEulerConstant) {
  const auto g = acstab::make_grid(1, 33);
  const acstab::ACParams p{0.1, 0.005};
  const auto eq = acstab::two_level_equation(acstab::SchemeTag::BE, g, p);
  const Vector prev = Vector::Constant(33, 0.5);
  const auto out = acstab::newton_solve([&](const Vector& x) { return eq.residual(x, prev); },
                                        [&](const Vector& x) { return eq.d_next(x, prev); },
                                        acstab::ScalarField(g, prev));
  ASSERT_TRUE(out.report.converged);
  EXPECT_NEAR(out.solution.min(), 0.682328, 1e-6);
  EXPECT_NEAR(out.solution.max(), 0.682328, 1e-6);
}

TEST(Newton, SuperlinearTail) {
  auto res = [](const Vector& u) { return Vector((u.array().cube() - 2.0 * u.array() - 5.0).matrix()); };
  auto jac = [](const Vector& u) { return diag((3.0 * u.array().square() - 2.0).matrix()); };
  NewtonConfig cfg;
  cfg.tol = 1e-14;
  const auto out = acstab::newton_solve(res, jac, Vector::Constant(3, 3.0), cfg);
  ASSERT_TRUE(out.report.converged);
  const auto& h = out.report.history;
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    // below ~1e-13 the residual is roundoff, not Newton error
    if (h[i] <= 1e-4 && h[i + 1] > 1e-13) EXPECT_LE(h[i + 1], std::pow(h[i], 1.5));
  }
}

TEST(Newton, ReportsNonConvergence) {
  // x^2 + 1 has no real root
  auto res = [](const Vector& u) { return Vector((u.array().square() + 1.0).matrix()); };
  auto jac = [](const Vector& u) { return diag(2.0 * u); };
  NewtonConfig cfg;
  cfg.max_iter = 8;
  const auto out = acstab::newton_solve(res, jac, Vector::Constant(1, 0.3), cfg);
  EXPECT_FALSE(out.report.converged);
  EXPECT_FALSE(out.report.failure.empty());
}

TEST(Newton, ReportsSingularJacobian) {
  auto res = [](const Vector& u) { return Vector(u.array() - 1.0); };
  auto jac = [](const Vector& u) { return SparseMatrix(u.size(), u.size()); };
  const auto out = acstab::newton_solve(res, jac, Vector::Zero(4));
  EXPECT_FALSE(out.report.converged);
  EXPECT_FALSE(out.report.failure.empty());
}

TEST(Newton, DampingStillConverges) {
  auto res = [](const Vector& u) { return Vector(u.array().atan()); };
  auto jac = [](const Vector& u) { return diag((1.0 / (1.0 + u.array().square())).matrix()); };
  NewtonConfig cfg;
  cfg.damping = 0.5;
  // undamped Newton on atan diverges from |x| > 1.39
  const auto out = acstab::newton_solve(res, jac, Vector::Constant(1, 3.0), cfg);
  ASSERT_TRUE(out.report.converged);
  EXPECT_NEAR(out.solution[0], 0.0, 1e-10);
}

TEST(Newton, ConfigValidation) {
  NewtonConfig cfg;
  cfg.tol = 0;
  EXPECT_THROW(cfg.validate(), acstab::ConfigError);
  cfg = {};
  cfg.damping = 1.5;
  EXPECT_THROW(cfg.validate(), acstab::ConfigError);
}

TEST(FdJacobian, Identity) {
  const Vector u = Vector::LinSpaced(6, -1, 2);
  const Eigen::MatrixXd j = acstab::fd_jacobian([](const Vector& x) { return x; }, u);
  EXPECT_LE((j - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FdJacobian, Cube) {
  const Vector u = Vector::Constant(5, 2.0);
  const Eigen::MatrixXd j = acstab::fd_jacobian([](const Vector& x) { return Vector(x.array().cube()); }, u);
  EXPECT_LE((j - 12.0 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(FdJacobian, BackwardEulerAnalytic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  const auto g = acstab::make_grid(1, 17);
  const auto eq = acstab::two_level_equation(acstab::SchemeTag::BE, g, {0.1, 0.005});
  Vector x(17), y(17);
  for (int i = 0; i < 17; ++i) {
    x[i] = U(rng);
    y[i] = U(rng);
  }
  const Eigen::MatrixXd fd = acstab::fd_jacobian([&](const Vector& v) { return eq.residual(v, y); }, x);
  const Eigen::MatrixXd an = Eigen::MatrixXd(eq.d_next(x, y));
  EXPECT_LE((fd - an).norm() / an.norm(), 1e-5);
}

acstab::HomotopyFamily shifted_cube() {
  // u^3 + u = delta, solution varies smoothly with delta
  return [](double delta) {
    return acstab::HomotopyProblem{
        [delta](const Vector& u) { return Vector((u.array().cube() + u.array() - delta).matrix()); },
        [](const Vector& u) { return diag((3.0 * u.array().square() + 1.0).matrix()); }};
  };
}

TEST(Homotopy, ConstantPathEqualsDirectSolveBitwise) {
  HomotopyConfig h;
  h.delta_start = h.delta_end = 0.7;
  h.steps = 1;
  const Vector seed = Vector::Constant(4, 0.2);
  const auto path = acstab::homotopy_path(shifted_cube(), seed, h);
  const auto prob = shifted_cube()(0.7);
  const auto direct = acstab::newton_solve(prob.residual, prob.jacobian, seed);
  ASSERT_TRUE(path.completed);
  EXPECT_EQ(path.solution, direct.solution);
  EXPECT_EQ(path.report.iterations, direct.report.iterations);
}

TEST(Homotopy, TracksSmoothBranch) {
  HomotopyConfig h;
  h.delta_start = 1e-3;
  h.delta_end = 10;
  h.steps = 8;
  const auto out = acstab::homotopy_path(shifted_cube(), Vector::Constant(2, 1e-3), h);
  ASSERT_TRUE(out.completed);
  EXPECT_DOUBLE_EQ(out.last_good_delta, 10.0);
  const double u = out.solution[0];
  EXPECT_NEAR(u * u * u + u, 10.0, 1e-9);
}

TEST(Homotopy, GeometricSchedule) {
  HomotopyConfig h;
  h.delta_start = 1e-3;
  h.delta_end = 0.1;
  EXPECT_DOUBLE_EQ(h.delta_at(0.0), 1e-3);
  EXPECT_DOUBLE_EQ(h.delta_at(1.0), 0.1);
  EXPECT_NEAR(h.delta_at(0.5), 1e-2, 1e-15);
}

TEST(Homotopy, FailureCarriesLastGoodDelta) {
  // u^2 = 1 - delta loses its real root at delta = 1
  acstab::HomotopyFamily fold = [](double delta) {
    return acstab::HomotopyProblem{
        [delta](const Vector& u) { return Vector((u.array().square() - 1.0 + delta).matrix()); },
        [](const Vector& u) { return diag(2.0 * u); }};
  };
  HomotopyConfig h;
  h.delta_start = 0.1;
  h.delta_end = 2.0;
  h.steps = 4;
  h.max_halvings = 6;
  NewtonConfig n;
  n.max_iter = 20;
  const auto out = acstab::homotopy_path(fold, Vector::Constant(1, 1.0), h, n);
  EXPECT_FALSE(out.completed);
  EXPECT_GT(out.last_good_delta, 0.1);
  EXPECT_LT(out.last_good_delta, 1.0);
}

}  // namespace
