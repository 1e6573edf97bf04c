// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hjepa/dataset.hpp"
#include "hjepa/sim/control.hpp"
#include "hjepa/sim/metrics.hpp"

namespace hjepa::sim {

// Per-method results of an evaluation: CSV rows plus the per-trajectory
// errors behind them (rows = test trajectories, one column per offset).
struct EvaluationResult {
  std::vector<MetricRow> rows;
  std::map<std::string, std::vector<std::vector<double>>> errors;
};

// No-prediction regime: every held-out step's own stacked observation is
// delivered and the method's action is compared with the oracle action at
// the logged state. One row per method at offset 0.
EvaluationResult eval_encoding(const Environment& env, const ModelZoo& zoo,
                               const std::vector<Method>& methods,
                               const data::Dataset& frames, int jobs);

// Transmit-once regime: from step 0 of each held-out trajectory only the
// first update is delivered; the plant is then driven by the method's own
// actions for `horizon` steps. The error at offset j compares u_j with the
// oracle action at the state actually reached. One row per method and
// offset 1..horizon.
EvaluationResult eval_prediction(const Environment& env, const ModelZoo& zoo,
                                 const std::vector<Method>& methods,
                                 const data::Dataset& frames, int horizon,
                                 std::uint64_t seed, int jobs);

// Column `offset` of a per-trajectory error table.
std::vector<double> errors_at(const EvaluationResult& result,
                              const std::string& method, int column);

}  // namespace hjepa::sim
