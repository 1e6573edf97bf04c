// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hjepa/error.hpp"

namespace hjepa::plant {

void PlantParams::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(cart_mass > 0, "plant.cart_mass must be > 0");
  require(pole_mass > 0, "plant.pole_mass must be > 0");
  require(pole_half_length > 0, "plant.pole_half_length must be > 0");
  require(integration_dt > 0, "plant.dt must be > 0");
  require(process_noise_std >= 0, "plant.process_noise_std must be >= 0");
  require(u_min < 0 && u_max > 0, "plant.u_min < 0 < plant.u_max required");
  require(track_limit > 0, "plant.track_limit must be > 0");
  require(std::isfinite(gravity), "plant.gravity must be finite");
}

bool is_finite(const PlantState& s) {
  return std::isfinite(s.cart_position) && std::isfinite(s.cart_velocity) &&
         std::isfinite(s.pole_angle) && std::isfinite(s.pole_angular_velocity);
}

bool has_failed(const PlantState& s, const PlantParams& params) {
  return !is_finite(s) || std::abs(s.pole_angle) > std::numbers::pi / 2 ||
         std::abs(s.cart_position) > params.track_limit;
}

StateVector continuous_derivative(const PlantState& s, double force,
                                  const PlantParams& p) {
  const double total = p.cart_mass + p.pole_mass;
  const double cos_t = std::cos(s.pole_angle);
  const double sin_t = std::sin(s.pole_angle);
  const double w = s.pole_angular_velocity;
  const double pml = p.pole_mass * p.pole_half_length;

  const double temp = (force + pml * w * w * sin_t) / total;
  const double angular_acc =
      (p.gravity * sin_t - cos_t * temp) /
      (p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total));
  const double cart_acc = temp - pml * angular_acc * cos_t / total;
  return {s.cart_velocity, cart_acc, w, angular_acc};
}

PlantState step_nominal(const PlantState& s, Action action,
                        const PlantParams& p) {
  const StateVector d = continuous_derivative(s, action.force, p);
  const double dt = p.integration_dt;
  PlantState next;
  next.cart_velocity = s.cart_velocity + dt * d(1);
  next.pole_angular_velocity = s.pole_angular_velocity + dt * d(3);
  next.cart_position = s.cart_position + dt * next.cart_velocity;
  next.pole_angle = s.pole_angle + dt * next.pole_angular_velocity;
  return next;
}

PlantState step_dynamics(const PlantState& s, Action action,
                         const PlantParams& p, RandomStream& rng) {
  PlantState next = step_nominal(s, action, p);
  if (p.process_noise_std > 0) {
    next.cart_position += p.process_noise_std * standard_normal(rng);
    next.cart_velocity += p.process_noise_std * standard_normal(rng);
    next.pole_angle += p.process_noise_std * standard_normal(rng);
    next.pole_angular_velocity += p.process_noise_std * standard_normal(rng);
  }
  return next;
}

Action clamp_action(double raw_force, const PlantParams& p) {
  return {std::clamp(raw_force, p.u_min, p.u_max)};
}

Linearization linearize(const PlantParams& p) {
  const double total = p.cart_mass + p.pole_mass;
  const double l = p.pole_half_length;
  const double denom = l * (4.0 / 3.0 - p.pole_mass / total);
  const double pml = p.pole_mass * l;

  // Continuous-time accelerations around theta = 0:
  //   theta_dd = (g theta - u / total) / denom
  //   x_dd     = u / total - pml theta_dd / total
  const double th_th = p.gravity / denom;
  const double th_u = -1.0 / (total * denom);
  const double x_th = -pml * th_th / total;
  const double x_u = 1.0 / total - pml * th_u / total;

  // Velocity rows: v' = v + dt acc. Position rows: q' = q + dt v'.
  const double dt = p.integration_dt;
  StateMatrix acc_rows = StateMatrix::Zero();
  acc_rows(1, 2) = x_th;
  acc_rows(3, 2) = th_th;
  InputMatrix acc_in = InputMatrix::Zero();
  acc_in(1, 0) = x_u;
  acc_in(3, 0) = th_u;

  Linearization lin;
  lin.a = StateMatrix::Identity() + dt * acc_rows;
  lin.b = dt * acc_in;
  for (int pos : {0, 2}) {
    const int vel = pos + 1;
    lin.a.row(pos) = StateMatrix::Identity().row(pos) + dt * lin.a.row(vel);
    lin.b.row(pos) = dt * lin.b.row(vel);
  }
  return lin;
}

LqrSolution solve_lqr(const Linearization& lin, const LqrWeights& weights) {
  StateMatrix q = StateMatrix::Zero();
  for (int i = 0; i < kStateDim; ++i) q(i, i) = weights.q_diag[i];
  const double r = weights.r;
  if (r <= 0) throw ConfigError("plant.lqr_r must be > 0");

  const StateMatrix& a = lin.a;
  const InputMatrix& b = lin.b;
  StateMatrix p = q;
  for (int it = 1; it <= kRiccatiMaxIterations; ++it) {
    const double s = r + (b.transpose() * p * b)(0, 0);
    const Gain k = (b.transpose() * p * a) / s;
    StateMatrix next = q + a.transpose() * p * (a - b * k);
    next = 0.5 * (next + next.transpose());
    const double change = (next - p).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
    p = next;
    if (change <= kRiccatiTolerance * scale) {
      LqrSolution sol;
      sol.cost_to_go = p;
      sol.gain = (b.transpose() * p * a) / (r + (b.transpose() * p * b)(0, 0));
      sol.iterations = it;
      return sol;
    }
    if (!p.allFinite()) break;
  }
  throw ConfigError("Riccati recursion did not converge within " +
                    std::to_string(kRiccatiMaxIterations) + " iterations");
}

Action oracle_policy(const PlantState& state, const Gain& gain,
                     const PlantParams& params) {
  const double raw = -(gain * state.vec())(0, 0);
  return clamp_action(raw, params);
}

double stage_cost(const PlantState& state, double force,
                  const LqrWeights& weights) {
  const StateVector x = state.vec();
  double c = weights.r * force * force;
  for (int i = 0; i < kStateDim; ++i) c += weights.q_diag[i] * x(i) * x(i);
  return c;
}

}  // namespace hjepa::plant
