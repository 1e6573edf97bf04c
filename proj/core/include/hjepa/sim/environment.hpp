// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hjepa/plant.hpp"
#include "hjepa/render.hpp"
#include "hjepa/random.hpp"

namespace hjepa::sim {

// Initial states are drawn uniformly from |x| <= position, |theta| <= angle
// with zero velocities.
struct InitialStateRange {
  double position = 0.2;  // m
  double angle = 0.05;    // rad

  void validate() const;
};

plant::PlantState sample_initial_state(RandomStream& rng,
                                       const InitialStateRange& range);

// Everything needed to simulate, render and score one device.
struct Environment {
  plant::PlantParams plant;
  plant::LqrWeights weights;
  plant::RenderConfig render;
  plant::LqrSolution lqr;
};

// Validates the parts and solves the oracle's Riccati equation.
Environment make_environment(const plant::PlantParams& params,
                             const plant::LqrWeights& weights,
                             const plant::RenderConfig& render);

}  // namespace hjepa::sim
