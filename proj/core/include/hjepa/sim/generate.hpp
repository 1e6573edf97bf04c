// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "hjepa/dataset.hpp"
#include "hjepa/nn/mlp.hpp"
#include "hjepa/sim/environment.hpp"

namespace hjepa::sim {

struct GenerationConfig {
  int trajectory_length = 100;
  int train_high = 200;
  int test_high = 40;
  int train_ml = 80;  // medium and low datasets each
  int test_ml = 40;
  double exploration_std = 1.0;  // N, Gaussian noise on the oracle force
  InitialStateRange init;
  int max_attempts = 64;  // regenerations of one divergent trajectory

  void validate() const;
};

// Which dataset a trajectory belongs to; part of its random-stream path.
enum class DatasetTag : std::uint64_t { kHigh = 1, kMedium = 2, kLow = 3 };

// One logged rollout under the oracle plus exploration noise: at step k the
// frame of x_k is rendered, u*_k = oracle(x_k), u_k = clamp(u*_k + noise) is
// applied. A trajectory that fails is regenerated from the next attempt's
// stream; DataError after max_attempts.
data::Trajectory generate_trajectory(const Environment& env,
                                     const GenerationConfig& cfg,
                                     std::uint64_t seed, DatasetTag tag,
                                     int index);

// Frames dataset with `train` then `test` trajectories, generated in parallel.
data::Dataset generate_state_dataset(const Environment& env,
                                     const GenerationConfig& cfg,
                                     std::uint64_t seed, DatasetTag tag,
                                     int train, int test, int stride, int jobs);

// Replaces every frame row by the encoder embedding of the stacked
// observation at that step.
data::Dataset embed_dataset(const data::Dataset& frames,
                            const nn::Mlp& encoder, int kappa, int stride,
                            int jobs);

}  // namespace hjepa::sim
