// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <array>

#include "hjepa/random.hpp"

namespace hjepa::plant {

inline constexpr int kStateDim = 4;
inline constexpr int kActionDim = 1;

using StateVector = Eigen::Matrix<double, kStateDim, 1>;
using StateMatrix = Eigen::Matrix<double, kStateDim, kStateDim>;
using InputMatrix = Eigen::Matrix<double, kStateDim, kActionDim>;
using Gain = Eigen::Matrix<double, kActionDim, kStateDim>;

// Frictionless cart-pole. The integration step is the sampling period.
struct PlantParams {
  double cart_mass = 1.0;          // kg
  double pole_mass = 0.1;          // kg
  double pole_half_length = 0.5;   // m
  double gravity = 9.81;           // m/s^2
  double integration_dt = 1e-3;    // s
  double process_noise_std = 1e-4; // per state component
  double u_max = 20.0;             // N
  double u_min = -20.0;            // N
  double track_limit = 2.4;        // m

  // Throws ConfigError on any violated invariant.
  void validate() const;
};

struct PlantState {
  double cart_position = 0.0;          // m
  double cart_velocity = 0.0;          // m/s
  double pole_angle = 0.0;             // rad, 0 = upright
  double pole_angular_velocity = 0.0;  // rad/s

  StateVector vec() const {
    return {cart_position, cart_velocity, pole_angle, pole_angular_velocity};
  }
  static PlantState from_vec(const StateVector& v) {
    return {v(0), v(1), v(2), v(3)};
  }
  bool operator==(const PlantState&) const = default;
};

struct Action {
  double force = 0.0;  // N
};

bool is_finite(const PlantState& state);

// FAILED (divergent): non-finite, pole beyond horizontal, or cart off track.
bool has_failed(const PlantState& state, const PlantParams& params);

// Time derivative of the continuous-time ODE.
StateVector continuous_derivative(const PlantState& state, double force,
                                  const PlantParams& params);

// One semi-implicit Euler step plus i.i.d. Gaussian process noise. No noise
// is drawn when process_noise_std is zero, so the stream is left untouched.
PlantState step_dynamics(const PlantState& state, Action action,
                         const PlantParams& params, RandomStream& rng);

// Noise-free step; the deterministic part of step_dynamics.
PlantState step_nominal(const PlantState& state, Action action,
                        const PlantParams& params);

Action clamp_action(double raw_force, const PlantParams& params);

struct Linearization {
  StateMatrix a;
  InputMatrix b;
};

// Analytic Jacobians at the upright equilibrium, discretized with the same
// semi-implicit Euler scheme used by step_dynamics.
Linearization linearize(const PlantParams& params);

struct LqrWeights {
  std::array<double, kStateDim> q_diag = {1.0, 0.1, 10.0, 0.1};
  double r = 0.01;
};

struct LqrSolution {
  Gain gain;              // u = -gain * x
  StateMatrix cost_to_go; // P of the discrete Riccati equation
  int iterations = 0;
};

inline constexpr double kRiccatiTolerance = 1e-9;
inline constexpr int kRiccatiMaxIterations = 10000;

// Iterates the discrete algebraic Riccati recursion until the largest entry
// change falls below kRiccatiTolerance (relative to max|P|). Throws
// ConfigError when it does not converge.
LqrSolution solve_lqr(const Linearization& lin, const LqrWeights& weights);

// Saturated LQR on the linearization; stands in for the optimal policy.
Action oracle_policy(const PlantState& state, const Gain& gain,
                     const PlantParams& params);

// x'Qx + r u^2 for one step.
double stage_cost(const PlantState& state, double force,
                  const LqrWeights& weights);

}  // namespace hjepa::plant
