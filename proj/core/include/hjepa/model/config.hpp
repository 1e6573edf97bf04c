// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hjepa/nn/optim.hpp"

namespace hjepa::model {

struct HjepaConfig {
  int embed_dim = 256;
  int frame_stack = 2;   // kappa
  int horizon = 20;      // K_p
  int depth_high = 4;    // h
  int depth_medium = 2;  // m
  int depth_low = 1;     // l
  double ema_rate = 0.99;
  std::vector<int> encoder_widths = {1024, 512, 256};
  int predictor_hidden = 1024;
  int actor_hidden = 128;

  // Requires l < m < h <= K_p, h % m == 0, m % l == 0, K_p % h == 0.
  void validate() const;
};

// Optimization schedule for every training stage.
struct TrainConfig {
  nn::SgdConfig sgd;               // learning rate, batch size, decay
  int epochs_high = 80;            // encoder + high-level predictor
  int epochs_medium = 150;
  int epochs_low = 150;
  int epochs_actor = 100;
  double actor_learning_rate = 0.01;
  int epochs_supervised = 50;
  int epochs_autoencoder = 30;
  // Global-norm clip of the reconstruction stage; its summed pixel loss
  // makes early gradients large enough to blow up without it. 0 disables.
  double autoencoder_clip_norm = 10.0;
  // Each epoch visits start steps k with k % pair_stride == epoch % pair_stride.
  int pair_stride = 8;
  // Bracket levels train on rollout inputs (predicted embeddings, as at
  // inference) instead of encoded embeddings.
  bool predicted_brackets = true;

  void validate() const;
};

}  // namespace hjepa::model
