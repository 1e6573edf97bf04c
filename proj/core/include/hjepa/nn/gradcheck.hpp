// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hjepa/nn/param_set.hpp"

namespace hjepa::nn {

struct Probe {
  double loss = 0.0;
  // Piecewise-region tag (e.g. Mlp::activation_signature). Probes whose tag
  // differs from the base point straddle a kink and are skipped.
  std::uint64_t region = 0;
};

using ProbeFn = std::function<Probe(const Vector& point)>;

struct GradCheckOptions {
  double step = 1e-5;
  // |a - n| / max(|a|, |n|, floor); the floor keeps round-off on vanishing
  // gradients from dominating the ratio.
  double floor = 1e-6;
  // Coordinates to probe; empty means all.
  std::vector<Eigen::Index> coordinates;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  Eigen::Index worst_coordinate = -1;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

// Compares analytic against central finite differences of f around point.
GradCheckReport check_gradient(const ProbeFn& f, const Vector& point,
                               const Vector& analytic,
                               const GradCheckOptions& options = {});

}  // namespace hjepa::nn
