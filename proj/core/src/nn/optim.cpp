// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/optim.hpp"

#include <cmath>

#include "hjepa/error.hpp"

namespace hjepa::nn {

void SgdConfig::validate() const {
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be > 0");
  if (batch_size <= 0) throw ConfigError("batch_size must be > 0");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(clip_norm >= 0)) throw ConfigError("clip_norm must be >= 0");
}

double SgdConfig::rate_at(int epoch) const {
  if (!linear_decay || epochs == 0) return learning_rate;
  return learning_rate * (1.0 - static_cast<double>(epoch) / epochs);
}

StepReport sgd_step(ParamSet& params, const ParamSet& grads,
                    double learning_rate, double clip_norm) {
  require_same_layout(params, grads, "sgd_step");
  StepReport report;
  double sq = 0.0;
  for (std::size_t i = 0; i < grads.size(); ++i)
    if (grads[i].trainable) sq += grads[i].value.squaredNorm();
  report.grad_norm = std::sqrt(sq);
  if (!std::isfinite(report.grad_norm)) return report;
  double factor = learning_rate;
  if (clip_norm > 0 && report.grad_norm > clip_norm)
    factor *= clip_norm / report.grad_norm;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].trainable) params[i].value -= factor * grads[i].value;
  report.applied = true;
  return report;
}

void ema_update(ParamSet& target, const ParamSet& online, double eta) {
  require_same_layout(target, online, "ema_update");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("ema rate must lie in [0, 1]");
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!target[i].trainable) continue;
    target[i].value = eta * target[i].value + (1.0 - eta) * online[i].value;
  }
}

void accumulate(ParamSet& into, const ParamSet& add) {
  require_same_layout(into, add, "accumulate");
  for (std::size_t i = 0; i < into.size(); ++i) into[i].value += add[i].value;
}

}  // namespace hjepa::nn
