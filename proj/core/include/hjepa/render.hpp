// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "hjepa/plant.hpp"

namespace hjepa::plant {

struct RenderConfig {
  int width = 32;
  int height = 32;
  int channels = 1;             // 1 (grayscale) or 3 (RGB)
  double world_window = 4.8;    // m of track mapped onto the frame width
  int supersample = 4;          // coverage samples per pixel side
  double pole_half_length = 0.5;

  void validate() const;
  std::size_t frame_size() const {
    return static_cast<std::size_t>(width) * height * channels;
  }
};

// Flattened row-major frame, channels interleaved, values in [0, 1].
using Observation = std::vector<float>;

// Rasterizes the cart (filled rectangle) and pole (one-pixel-wide segment)
// with per-pixel area coverage. Background is 0, fully covered pixels are 1.
// In RGB mode the cart lands in the red channel and the pole in the blue one.
Observation render_observation(const PlantState& state, const RenderConfig& cfg);

// Concatenates the kappa most recent frames, oldest first. When fewer than
// kappa frames exist, the oldest available frame is replicated at the front.
// Throws DataError on an empty history.
std::vector<float> stack_frames(std::span<const Observation> history,
                                int kappa);

}  // namespace hjepa::plant
