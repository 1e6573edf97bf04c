// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hjepa/error.hpp"
#include "hjepa/plant.hpp"

namespace hjepa::plant {
namespace {

PlantParams Noiseless() {
  PlantParams p;
  p.process_noise_std = 0.0;
  return p;
}

// Classic fourth-order Runge-Kutta on the continuous-time ODE; independent of
// the semi-implicit update under test.
StateVector Rk4Step(const StateVector& x, double u, const PlantParams& p) {
  auto f = [&](const StateVector& s) {
    return continuous_derivative(PlantState::from_vec(s), u, p);
  };
  const double h = p.integration_dt;
  const StateVector k1 = f(x);
  const StateVector k2 = f(x + 0.5 * h * k1);
  const StateVector k3 = f(x + 0.5 * h * k2);
  const StateVector k4 = f(x + h * k3);
  return x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

TEST(StepDynamicsTest, UprightEquilibriumIsFixedPoint) {
  RandomStream rng(1);
  const PlantState next = step_dynamics({}, {0.0}, Noiseless(), rng);
  EXPECT_EQ(next, PlantState{});
}

TEST(StepDynamicsTest, FixedPointHoldsForOtherParameters) {
  RandomStream rng(2);
  for (int i = 0; i < 20; ++i) {
    PlantParams p = Noiseless();
    p.cart_mass = uniform(rng, 0.2, 5.0);
    p.pole_mass = uniform(rng, 0.01, 1.0);
    p.pole_half_length = uniform(rng, 0.1, 2.0);
    p.gravity = uniform(rng, 0.0, 20.0);
    EXPECT_EQ(step_dynamics({}, {0.0}, p, rng), PlantState{});
  }
}

TEST(StepDynamicsTest, SmallTiltFallsAndTracksRk4) {
  const PlantParams p = Noiseless();
  RandomStream rng(3);
  PlantState euler{0.0, 0.0, 0.01, 0.0};
  StateVector rk4 = euler.vec();
  double previous = euler.pole_angle;
  for (int k = 0; k < 50; ++k) {
    euler = step_dynamics(euler, {0.0}, p, rng);
    rk4 = Rk4Step(rk4, 0.0, p);
    EXPECT_GT(euler.pole_angle, previous) << "step " << k;
    previous = euler.pole_angle;
    EXPECT_LT((euler.vec() - rk4).cwiseAbs().maxCoeff(), 1e-4) << "step " << k;
  }
}

TEST(StepDynamicsTest, SameSeedIsBitIdentical) {
  const PlantParams p;  // noise on
  RandomStream a(99);
  RandomStream b(99);
  PlantState sa{0.1, 0.0, 0.02, -0.1};
  PlantState sb = sa;
  for (int k = 0; k < 100; ++k) {
    sa = step_dynamics(sa, {1.5}, p, a);
    sb = step_dynamics(sb, {1.5}, p, b);
  }
  EXPECT_EQ(sa, sb);
}

TEST(StepDynamicsTest, NoiseMatchesConfiguredStd) {
  PlantParams p;
  p.process_noise_std = 1e-3;
  RandomStream rng(4);
  double sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const PlantState s = step_dynamics({}, {0.0}, p, rng);
    sum_sq += s.cart_position * s.cart_position;
  }
  EXPECT_NEAR(std::sqrt(sum_sq / n), 1e-3, 3e-5);
}

TEST(StepDynamicsTest, NonFiniteStateIsFlaggedNotThrown) {
  const PlantParams p = Noiseless();
  RandomStream rng(5);
  PlantState s{0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
  PlantState next;
  EXPECT_NO_THROW(next = step_dynamics(s, {0.0}, p, rng));
  EXPECT_TRUE(has_failed(next, p));
}

TEST(FailureTest, DeclaresAngleAndTrackViolations) {
  const PlantParams p;
  EXPECT_FALSE(has_failed({0.0, 0.0, 1.5, 0.0}, p));
  EXPECT_TRUE(has_failed({0.0, 0.0, 1.6, 0.0}, p));
  EXPECT_TRUE(has_failed({2.5, 0.0, 0.0, 0.0}, p));
  EXPECT_TRUE(has_failed({-2.5, 0.0, 0.0, 0.0}, p));
}

TEST(ClampActionTest, SaturatesAtForceLimits) {
  const PlantParams p;
  EXPECT_EQ(clamp_action(35.0, p).force, 20.0);
  EXPECT_EQ(clamp_action(-35.0, p).force, -20.0);
  EXPECT_EQ(clamp_action(5.0, p).force, 5.0);
}

TEST(ClampActionTest, IsIdempotentAndBounded) {
  const PlantParams p;
  RandomStream rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double raw = uniform(rng, -100.0, 100.0);
    const double once = clamp_action(raw, p).force;
    EXPECT_GE(once, p.u_min);
    EXPECT_LE(once, p.u_max);
    EXPECT_EQ(clamp_action(once, p).force, once);
  }
}

TEST(ParamsTest, ValidateRejectsBadValues) {
  PlantParams p;
  EXPECT_NO_THROW(p.validate());
  p.cart_mass = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.u_min = 1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.process_noise_std = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.integration_dt = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(LinearizeTest, MatchesFiniteDifferenceJacobians) {
  const PlantParams p = Noiseless();
  const Linearization lin = linearize(p);
  const double eps = 1e-5;
  StateMatrix fd_a;
  for (int j = 0; j < kStateDim; ++j) {
    StateVector e = StateVector::Zero();
    e(j) = eps;
    fd_a.col(j) = (step_nominal(PlantState::from_vec(e), {0.0}, p).vec() -
                   step_nominal(PlantState::from_vec(-e), {0.0}, p).vec()) /
                  (2 * eps);
  }
  const StateVector fd_b = (step_nominal({}, {eps}, p).vec() -
                            step_nominal({}, {-eps}, p).vec()) /
                           (2 * eps);
  for (int i = 0; i < kStateDim; ++i) {
    for (int j = 0; j < kStateDim; ++j) {
      const double scale = std::max(std::abs(fd_a(i, j)), 1.0);
      EXPECT_LT(std::abs(lin.a(i, j) - fd_a(i, j)) / scale, 1e-4)
          << "A(" << i << "," << j << ")";
    }
    const double scale = std::max(std::abs(fd_b(i)), 1e-6);
    EXPECT_LT(std::abs(lin.b(i, 0) - fd_b(i)) / scale, 1e-4) << "B(" << i << ")";
  }
  EXPECT_LT((lin.a - fd_a).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_EQ(lin.b.cols(), 1);
}

TEST(LinearizeTest, ZeroGravityRemovesAngleCoupling) {
  PlantParams p = Noiseless();
  p.gravity = 0.0;
  const Linearization lin = linearize(p);
  EXPECT_EQ(lin.a(3, 2), 0.0);
  EXPECT_EQ(lin.a(1, 2), 0.0);
  EXPECT_EQ(lin.a(2, 2), 1.0);
  EXPECT_EQ(lin.a(0, 2), 0.0);
}

TEST(LinearizeTest, AngleCouplingFollowsSymbolicForm) {
  const PlantParams p = Noiseless();
  const double total = p.cart_mass + p.pole_mass;
  const double denom = p.pole_half_length * (4.0 / 3.0 - p.pole_mass / total);
  const double dt = p.integration_dt;
  const Linearization lin = linearize(p);
  EXPECT_NEAR(lin.a(3, 2), dt * p.gravity / denom, 1e-15);
  EXPECT_NEAR(lin.b(3, 0), -dt / (total * denom), 1e-15);
}

class OracleTest : public ::testing::Test {
 protected:
  void SetUp() override {
    sol_ = solve_lqr(linearize(params_), LqrWeights{});
  }
  PlantParams params_ = Noiseless();
  LqrSolution sol_;
};

TEST_F(OracleTest, RiccatiConvergesWithinBudget) {
  EXPECT_GT(sol_.iterations, 0);
  EXPECT_LE(sol_.iterations, kRiccatiMaxIterations);
  // P is symmetric positive definite.
  Eigen::SelfAdjointEigenSolver<StateMatrix> eig(sol_.cost_to_go);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST_F(OracleTest, GainSatisfiesRiccatiFixedPoint) {
  const Linearization lin = linearize(params_);
  const StateMatrix& pm = sol_.cost_to_go;
  StateMatrix q = StateMatrix::Zero();
  q.diagonal() << 1.0, 0.1, 10.0, 0.1;
  const StateMatrix residual =
      q + lin.a.transpose() * pm * (lin.a - lin.b * sol_.gain) - pm;
  EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-5 * pm.cwiseAbs().maxCoeff());
  // Closed loop is Schur stable.
  Eigen::EigenSolver<StateMatrix> eig(lin.a - lin.b * sol_.gain);
  EXPECT_LT(eig.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
}

TEST_F(OracleTest, EquilibriumMapsToZeroForce) {
  EXPECT_EQ(oracle_policy({}, sol_.gain, params_).force, 0.0);
}

TEST_F(OracleTest, PolicyIsAntisymmetric) {
  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    const PlantState s{uniform(rng, -1, 1), uniform(rng, -1, 1),
                       uniform(rng, -0.2, 0.2), uniform(rng, -1, 1)};
    const PlantState neg = PlantState::from_vec(-s.vec());
    EXPECT_EQ(oracle_policy(s, sol_.gain, params_).force,
              -oracle_policy(neg, sol_.gain, params_).force);
  }
}

// Index of the last step with |angle| >= 0.01, or -1 if never.
int LastTiltViolation(PlantState s, int steps, const Gain& gain,
                      const PlantParams& p, RandomStream& rng) {
  int last = -1;
  for (int k = 0; k < steps; ++k) {
    s = step_dynamics(s, oracle_policy(s, gain, p), p, rng);
    EXPECT_FALSE(has_failed(s, p));
    if (std::abs(s.pole_angle) >= 0.01) last = k;
  }
  return last;
}

TEST_F(OracleTest, SettlesSmallTiltsWithin2000Steps) {
  RandomStream rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const PlantState s{0.0, 0.0, uniform(rng, -0.05, 0.05), 0.0};
    // Settled before step 2000 and still settled 4000 steps later.
    EXPECT_LT(LastTiltViolation(s, 6000, sol_.gain, params_, rng), 2000)
        << "trial " << trial;
  }
}

TEST_F(OracleTest, StabilizesOffsetCartPositions) {
  RandomStream rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    PlantState s{uniform(rng, -0.2, 0.2), 0.0, uniform(rng, -0.05, 0.05), 0.0};
    // Recentring the cart needs a counter-tilt, so settling takes longer.
    EXPECT_LT(LastTiltViolation(s, 6000, sol_.gain, params_, rng), 3000)
        << "trial " << trial;
    for (int k = 0; k < 6000; ++k)
      s = step_dynamics(s, oracle_policy(s, sol_.gain, params_), params_, rng);
    EXPECT_LT(s.vec().norm(), 0.02) << "trial " << trial;
  }
}

TEST(StageCostTest, IsQuadraticForm) {
  const LqrWeights w;
  const PlantState s{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(stage_cost(s, 5.0, w),
                   1.0 * 1 + 0.1 * 4 + 10.0 * 9 + 0.1 * 16 + 0.01 * 25);
}

}  // namespace
}  // namespace hjepa::plant
