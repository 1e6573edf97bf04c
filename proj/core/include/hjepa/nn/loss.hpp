// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hjepa/nn/param_set.hpp"

namespace hjepa::nn {

struct LossResult {
  double value = 0.0;
  Matrix grad;  // d value / d predicted, same shape as predicted
};

inline constexpr double kCosineEpsilon = 1e-8;

// Row-wise 1 - <p, t> / max(|p| |t|, kCosineEpsilon), averaged over rows.
// The target is a constant: no gradient flows into it.
LossResult cosine_loss(const Matrix& predicted, const Matrix& target);

// Per-row cosine distance without gradient.
Vector cosine_distance_rows(const Matrix& predicted, const Matrix& target);

// mean over all entries of (p - t)^2.
LossResult mse_loss(const Matrix& predicted, const Matrix& target);

}  // namespace hjepa::nn
