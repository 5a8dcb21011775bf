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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "acstab/schemes.hpp"
#include "oracle.hpp"

namespace {

using acstab::ACParams;
using acstab::ModeIndex;
using acstab::ScalarField;
using acstab::SchemeKind;
using acstab::Vector;

const std::vector<SchemeKind>& all_schemes() {
  static const std::vector<SchemeKind> kinds = {SchemeKind::be(), SchemeKind::cn(), SchemeKind::modcn(),
                                                SchemeKind::dirk()};
  return kinds;
}

oracle::Kind to_oracle(const SchemeKind& k) {
  switch (k.tag) {
    case acstab::SchemeTag::BE: return oracle::Kind::BE;
    case acstab::SchemeTag::CN: return oracle::Kind::CN;
    case acstab::SchemeTag::MODCN: return oracle::Kind::MODCN;
    default: return oracle::Kind::DIRK2;
  }
}

ScalarField constant(double v, int n = 65) { return ScalarField::constant(acstab::make_grid(1, n), v); }

ScalarField smooth_random(std::mt19937_64& rng, const acstab::GridSpec& g, double amp) {
  // a few low Neumann modes with random weights keeps Newton well inside its basin
  std::uniform_real_distribution<double> U(-1, 1);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(g.size()));
  for (int k = 0; k < 4; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(g.dim), k);
    if (g.dim == 2) idx[1] = (k + 1) % 3;
    v += U(rng) * acstab::eval_mode(ModeIndex::from_integers(idx), g).values();
  }
  return {g, amp * v / v.cwiseAbs().maxCoeff()};
}

void expect_constant(const ScalarField& u, double v, double tol) {
  EXPECT_NEAR(u.min(), v, tol);
  EXPECT_NEAR(u.max(), v, tol);
}

TEST(SchemeKind, ParseAndName) {
  EXPECT_EQ(SchemeKind::parse("CN").tag, acstab::SchemeTag::CN);
  EXPECT_EQ(SchemeKind::parse("dirk2").name(), "dirk2");
  EXPECT_EQ(SchemeKind::parse("modcn").name(), "modcn");
  EXPECT_THROW(SchemeKind::parse("rk4"), acstab::ConfigError);
}

TEST(BackwardEuler, SteadyState) {
  for (double dt : {1e-3, 0.01, 0.5}) {
    const auto out = acstab::be_step(constant(1.0), {0.1, dt});
    ASSERT_TRUE(out.report.success);
    expect_constant(out.next, 1.0, 0.0);
  }
}

TEST(BackwardEuler, HalfMapsToCubicRoot) {
  const auto out = acstab::be_step(constant(0.5), {0.1, 0.005});
  ASSERT_TRUE(out.report.success);
  expect_constant(out.next, 0.6823278038, 1e-9);
}

TEST(BackwardEuler, StaysOnOriginalSide) {
  const auto out = acstab::be_step(constant(1.9931), {0.1, 0.005});
  ASSERT_TRUE(out.report.success);
  EXPECT_GT(out.next.min(), 1.0);
  EXPECT_LT(out.next.max(), 1.9931);
  EXPECT_NEAR(out.next.max() - out.next.min(), 0.0, 1e-12);
}

TEST(CrankNicolson, SteadyStates) {
  for (double v : {-1.0, 1.0}) expect_constant(acstab::cn_step(constant(v), {0.1, 0.01}).next, v, 0.0);
}

TEST(CrankNicolson, JumpsAcrossZero) {
  const auto out = acstab::cn_step(constant(1.99310), {0.1, 0.01});
  ASSERT_TRUE(out.report.success);
  expect_constant(out.next, -0.984375, 1e-3);
}

TEST(CrankNicolson, SmallConstantKeepsSign) {
  const auto out = acstab::cn_step(constant(0.5), {0.1, 0.01});
  ASSERT_TRUE(out.report.success);
  EXPECT_GT(out.next.min(), 0.5);
  EXPECT_LE(out.next.max(), 1.0);
  EXPECT_NEAR(out.next.min(), oracle::dynamic_step(oracle::Kind::CN, 0.5, 0.1, 0.01), 1e-9);
}

TEST(ModifiedCN, FixedPointsAndClosedForm) {
  expect_constant(acstab::modcn_step(constant(1.0), {0.1, 0.01}).next, 1.0, 1e-15);
  expect_constant(acstab::modcn_step(constant(0.0), {0.1, 0.01}).next, 0.0, 0.0);
  const auto out = acstab::modcn_step(constant(2.0 * std::sqrt(2.0)), {0.1, 0.01});
  ASSERT_TRUE(out.report.success);
  expect_constant(out.next, 0.0, 1e-10);
}

TEST(Dirk, FixedPoints) {
  for (double v : {-1.0, 0.0, 1.0}) {
    const auto out = acstab::dirk_step(constant(v), acstab::ButcherTableau::dirk2(), {0.1, 0.01});
    ASSERT_TRUE(out.report.success);
    expect_constant(out.next, v, 0.0);
  }
}

TEST(Dirk, LargeConstantFlipsSign) {
  const auto out = acstab::dirk_step(constant(7.0), acstab::ButcherTableau::dirk2(), {0.1, 0.01});
  ASSERT_TRUE(out.report.success);
  EXPECT_LT(out.next.max(), 0.0);
  EXPECT_NEAR(out.next.max() - out.next.min(), 0.0, 1e-12);
  EXPECT_NEAR(out.next.min(), oracle::dynamic_step(oracle::Kind::DIRK2, 7.0, 0.1, 0.01), 1e-9);
}

TEST(Dirk, StageIdentity) {
  std::mt19937_64 rng(5);
  const auto g = acstab::make_grid(1, 65);
  const ACParams p{0.1, 0.01};
  for (int trial = 0; trial < 5; ++trial) {
    const auto u = smooth_random(rng, g, 1.5);
    const auto out = acstab::dirk_step(u, acstab::ButcherTableau::dirk2(), p);
    ASSERT_TRUE(out.report.success);
    ASSERT_EQ(out.stages.size(), 2u);
    const Vector expect = out.stages[1].values() + 0.25 * p.dt * acstab::ac_rhs(out.stages[1], p).values();
    EXPECT_LE((out.next.values() - expect).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Dirk, ThreeStageTableau) {
  // general lower-triangular arrays go through the same stage loop
  acstab::ButcherTableau tab;
  tab.a = Eigen::MatrixXd::Zero(3, 3);
  tab.a << 0.5, 0, 0, 0.25, 0.5, 0, 0.1, 0.2, 0.5;
  tab.b = Eigen::Vector3d(0.2, 0.3, 0.5);
  tab.c = tab.a.rowwise().sum();
  const auto out = acstab::dirk_step(constant(0.4), tab, {0.1, 0.001});
  ASSERT_TRUE(out.report.success);
  EXPECT_EQ(out.report.stages.size(), 3u);
  EXPECT_EQ(out.stages.size(), 3u);
  EXPECT_GT(out.next.min(), 0.4);
}

TEST(Steps, FixedPointsNeedNoIterations) {
  for (const auto& kind : all_schemes()) {
    for (double v : {-1.0, 0.0, 1.0}) {
      const auto out = acstab::step(kind, constant(v), {0.2, 0.03});
      ASSERT_TRUE(out.report.success) << kind.name();
      for (const auto& st : out.report.stages) EXPECT_EQ(st.iterations, 0) << kind.name() << " " << v;
      expect_constant(out.next, v, 0.0);
    }
  }
}

TEST(Steps, ScalarConsistency) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-3, 3);
  const ACParams p{0.1, 0.005};
  for (const auto& kind : all_schemes()) {
    for (int trial = 0; trial < 10; ++trial) {
      const double r = U(rng);
      const auto out = acstab::step(kind, constant(r, 17), p);
      ASSERT_TRUE(out.report.success);
      const double s = acstab::scalar_step(kind, r, p);
      EXPECT_NEAR(out.next.min(), s, 1e-9 * std::max(1.0, std::abs(s))) << kind.name() << " r=" << r;
      EXPECT_NEAR(out.next.max(), s, 1e-9 * std::max(1.0, std::abs(s))) << kind.name() << " r=" << r;
      EXPECT_NEAR(s, oracle::dynamic_step(to_oracle(kind), r, p.eps, p.dt), 1e-9 * std::max(1.0, std::abs(s)));
    }
  }
}

TEST(Steps, OddSymmetry) {
  std::mt19937_64 rng(23);
  for (int dim : {1, 2}) {
    const auto g = acstab::make_grid(dim, dim == 1 ? 65 : 17);
    for (const auto& kind : all_schemes()) {
      for (int trial = 0; trial < 4; ++trial) {
        const auto u = smooth_random(rng, g, 1.5);
        const ScalarField neg(g, -u.values());
        const auto a = acstab::step(kind, u, {0.1, 0.005});
        const auto b = acstab::step(kind, neg, {0.1, 0.005});
        ASSERT_TRUE(a.report.success && b.report.success);
        EXPECT_LE((a.next.values() + b.next.values()).cwiseAbs().maxCoeff(), 1e-10) << kind.name();
      }
    }
  }
}

TEST(Steps, JacobiansMatchFiniteDifferences) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-2, 2);
  const ACParams p{0.3, 0.01};
  for (int dim : {1, 2}) {
    const auto g = acstab::make_grid(dim, dim == 1 ? 12 : 5);
    const auto n = static_cast<Eigen::Index>(g.size());
    auto random_vec = [&] {
      Vector v(n);
      for (Eigen::Index i = 0; i < n; ++i) v[i] = U(rng);
      return v;
    };
    for (auto tag : {acstab::SchemeTag::BE, acstab::SchemeTag::CN, acstab::SchemeTag::MODCN}) {
      const auto eq = acstab::two_level_equation(tag, g, p);
      for (int trial = 0; trial < 20; ++trial) {
        const Vector x = random_vec(), y = random_vec();
        const Eigen::MatrixXd fdn = acstab::fd_jacobian([&](const Vector& v) { return eq.residual(v, y); }, x);
        const Eigen::MatrixXd an = Eigen::MatrixXd(eq.d_next(x, y));
        EXPECT_LE((fdn - an).norm() / an.norm(), 1e-5);
        const Eigen::MatrixXd fdp = acstab::fd_jacobian([&](const Vector& v) { return eq.residual(x, v); }, y);
        const Eigen::MatrixXd ap = Eigen::MatrixXd(eq.d_prev(x, y));
        EXPECT_LE((fdp - ap).norm() / ap.norm(), 1e-5);
      }
    }
    for (int trial = 0; trial < 20; ++trial) {
      const auto prob = acstab::dirk_stage_problem(g, p, 0.25, random_vec());
      const Vector x = random_vec();
      const Eigen::MatrixXd fd = acstab::fd_jacobian(prob.residual, x);
      const Eigen::MatrixXd an = Eigen::MatrixXd(prob.jacobian(x));
      EXPECT_LE((fd - an).norm() / an.norm(), 1e-5);
    }
  }
}

TEST(Steps, TwoLevelRejectsDirk) {
  EXPECT_THROW(acstab::two_level_equation(acstab::SchemeTag::DIRK, acstab::make_grid(1, 5), {}),
               acstab::ConfigError);
}

double final_error(const SchemeKind& kind, double dt, double t_end, const Vector& reference) {
  const auto g = acstab::make_grid(1, 33);
  ScalarField u(g, 0.3 * acstab::eval_mode(ModeIndex::from_integers({1}), g).values());
  const int steps = static_cast<int>(std::lround(t_end / dt));
  for (int i = 0; i < steps; ++i) u = acstab::step(kind, u, {0.5, dt}).next;
  return (u.values() - reference).cwiseAbs().maxCoeff();
}

TEST(Steps, ConvergenceOrder) {
  const double t_end = 0.2;
  const auto g = acstab::make_grid(1, 33);
  const std::vector<double> dts = {1e-2, 5e-3, 2.5e-3};
  for (const auto& kind : all_schemes()) {
    ScalarField ref(g, 0.3 * acstab::eval_mode(ModeIndex::from_integers({1}), g).values());
    const double fine = dts.back() / 64;
    const int steps = static_cast<int>(std::lround(t_end / fine));
    for (int i = 0; i < steps; ++i) ref = acstab::step(kind, ref, {0.5, fine}).next;
    std::vector<double> err;
    for (double dt : dts) err.push_back(final_error(kind, dt, t_end, ref.values()));
    // MODCN treats the concave -phi/eps^2 term explicitly, which costs it an
    // order: it is first-order despite the trapezoidal diffusion.
    const bool first_order = kind.tag == acstab::SchemeTag::BE || kind.tag == acstab::SchemeTag::MODCN;
    const double required = first_order ? 0.9 : 1.9;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double order = std::log2(err[i] / err[i + 1]);
      EXPECT_GE(order, required) << kind.name() << " dt=" << dts[i];
      if (first_order) EXPECT_LE(order, 1.2) << kind.name() << " dt=" << dts[i];
    }
  }
}

TEST(Simulate, BackwardEulerSettlesNearStart) {
  const auto t = acstab::simulate(SchemeKind::be(), constant(1.9931, 257), 100, {0.1, 0.005});
  EXPECT_FALSE(t.failed);
  ASSERT_TRUE(t.settled);
  EXPECT_EQ(t.limit_sign, 1);
  EXPECT_EQ(t.center_sign_changes(), 0);
  for (std::size_t i = 1; i < t.summaries.size(); ++i) {
    EXPECT_LE(t.summaries[i].center, t.summaries[i - 1].center);
  }
}

TEST(Simulate, CrankNicolsonWrongLimit) {
  const auto t = acstab::simulate(SchemeKind::cn(), constant(1.9931, 257), 100, {0.1, 0.01});
  ASSERT_TRUE(t.settled);
  EXPECT_EQ(t.limit_sign, -1);
  EXPECT_LT(t.summaries[1].center, 0.0);
  EXPECT_EQ(t.center_sign_changes(), 1);
}

TEST(Simulate, CrankNicolsonZigZag) {
  const auto g = acstab::make_grid(1, 257);
  const ScalarField u0(g, Vector::Constant(257, 5.074) +
                              0.1 * acstab::eval_mode(ModeIndex::from_integers({1}), g).values());
  const auto t = acstab::simulate(SchemeKind::cn(), u0, 50, {0.1, 0.01});
  EXPECT_EQ(t.center_sign_changes(), 9);
  EXPECT_EQ(t.center_limit_sign, -1);
  EXPECT_GE(t.center_settle_step, 9);
  EXPECT_LE(t.center_settle_step, 14);
  EXPECT_EQ(t.limit_sign, -1);
}

TEST(Simulate, SummariesAndSnapshots) {
  acstab::SimulateOptions opt;
  opt.keep_snapshots = true;
  const auto t = acstab::simulate(SchemeKind::modcn(), constant(0.3, 9), 5, {0.1, 0.01}, opt);
  EXPECT_EQ(t.steps_taken(), 5);
  EXPECT_EQ(t.snapshots.size(), 6u);
  EXPECT_DOUBLE_EQ(t.summaries[5].time, 0.05);
  EXPECT_THROW(acstab::simulate(SchemeKind::cn(), constant(0.3, 9), 0, {}), acstab::ConfigError);
}

TEST(Simulate, FailureTruncates) {
  acstab::SimulateOptions opt;
  opt.step.newton.max_iter = 1;
  const auto t = acstab::simulate(SchemeKind::cn(), constant(5.0, 9), 10, {0.1, 0.01}, opt);
  EXPECT_TRUE(t.failed);
  EXPECT_FALSE(t.diagnostic.empty());
  EXPECT_LT(t.steps_taken(), 10);
}

TEST(ScalarMap, Examples) {
  const auto cn = acstab::scalar_map(SchemeKind::cn(), 1.99310, {0.1, 0.01});
  ASSERT_EQ(cn.size(), 1u);
  EXPECT_TRUE(cn[0].selected);
  // the reference r is rounded to six figures
  EXPECT_NEAR(cn[0].value, -0.984375, 2e-5);

  const auto mod = acstab::scalar_map(SchemeKind::modcn(), 0.0, {0.37, 2.5});
  ASSERT_EQ(mod.size(), 1u);
  EXPECT_EQ(mod[0].value, 0.0);

  const auto be = acstab::scalar_map(SchemeKind::be(), 0.5, {0.1, 0.005});
  ASSERT_EQ(be.size(), 1u);
  EXPECT_NEAR(be[0].value, 0.6823278038, 1e-9);
}

TEST(ScalarMap, UniqueBelowThreshold) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> R(-20, 20), F(0.05, 1.0);
  const double eps = 0.1;
  for (int trial = 0; trial < 200; ++trial) {
    const double r = R(rng), f = F(rng);
    EXPECT_EQ(acstab::scalar_map(SchemeKind::be(), r, {eps, f * eps * eps}).size(), 1u);
    EXPECT_EQ(acstab::scalar_map(SchemeKind::cn(), r, {eps, 2 * f * eps * eps}).size(), 1u);
    EXPECT_EQ(acstab::scalar_map(SchemeKind::modcn(), r, {eps, 100 * f}).size(), 1u);
    EXPECT_EQ(acstab::scalar_map(SchemeKind::dirk(), r, {eps, 4 * f * eps * eps}).size(), 1u);
  }
}

TEST(ScalarMap, AllImagesMatchOracle) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> R(-3, 3);
  const ACParams p{0.1, 0.05};  // beyond every finite threshold: several branches
  for (int trial = 0; trial < 50; ++trial) {
    const double r = R(rng);
    for (const auto& kind : all_schemes()) {
      auto got = acstab::scalar_map(kind, r, p);
      std::vector<double> values;
      int selected = 0;
      for (const auto& im : got) {
        values.push_back(im.value);
        selected += im.selected;
      }
      std::sort(values.begin(), values.end());
      std::vector<double> ref = kind.tag == acstab::SchemeTag::DIRK ? oracle::forward_dirk(r, p.eps, p.dt)
                                                                   : oracle::forward_two_level(to_oracle(kind), r, p.eps, p.dt);
      // collapse oracle duplicates from distinct branches
      std::vector<double> uniq;
      for (double v : ref) {
        if (uniq.empty() || std::abs(uniq.back() - v) > 1e-7 * std::max(1.0, std::abs(v))) uniq.push_back(v);
      }
      ASSERT_EQ(values.size(), uniq.size()) << kind.name() << " r=" << r;
      for (std::size_t i = 0; i < uniq.size(); ++i) EXPECT_NEAR(values[i], uniq[i], 1e-7 * std::max(1.0, std::abs(uniq[i])));
      EXPECT_LE(selected, 1);
    }
  }
}

}  // namespace
