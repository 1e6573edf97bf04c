// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/environment.hpp"

#include "hjepa/error.hpp"

namespace hjepa::sim {

void InitialStateRange::validate() const {
  if (!(position >= 0.0) || !(angle >= 0.0))
    throw ConfigError("initial state ranges must be non-negative");
}

plant::PlantState sample_initial_state(RandomStream& rng,
                                       const InitialStateRange& range) {
  plant::PlantState s;
  s.cart_position = uniform(rng, -range.position, range.position);
  s.pole_angle = uniform(rng, -range.angle, range.angle);
  return s;
}

Environment make_environment(const plant::PlantParams& params,
                             const plant::LqrWeights& weights,
                             const plant::RenderConfig& render) {
  params.validate();
  render.validate();
  for (double q : weights.q_diag)
    if (!(q >= 0.0)) throw ConfigError("plant.q entries must be non-negative");
  if (!(weights.r > 0.0)) throw ConfigError("plant.r must be positive");
  Environment env{params, weights, render, {}};
  env.lqr = plant::solve_lqr(plant::linearize(params), weights);
  return env;
}

}  // namespace hjepa::sim
