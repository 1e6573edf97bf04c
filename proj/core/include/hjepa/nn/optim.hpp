// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hjepa/nn/param_set.hpp"

namespace hjepa::nn {

struct SgdConfig {
  double learning_rate = 0.1;
  int batch_size = 256;
  int epochs = 40;
  double clip_norm = 0.0;    // global gradient-norm clip; 0 disables
  bool linear_decay = true;  // lr_e = lr * (1 - e / epochs)

  void validate() const;
  double rate_at(int epoch) const;
};

struct StepReport {
  bool applied = false;     // false when the gradient was non-finite
  double grad_norm = 0.0;   // before clipping
};

// p <- p - lr * g on trainable tensors, after optional global-norm clipping.
// A non-finite gradient leaves params untouched and reports applied=false.
StepReport sgd_step(ParamSet& params, const ParamSet& grads, double learning_rate,
                    double clip_norm = 0.0);

// target <- eta * target + (1 - eta) * online on trainable tensors.
void ema_update(ParamSet& target, const ParamSet& online, double eta);

// Elementwise sum of two gradient sets with the same layout.
void accumulate(ParamSet& into, const ParamSet& add);

}  // namespace hjepa::nn
