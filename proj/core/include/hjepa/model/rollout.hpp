// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hjepa/nn/mlp.hpp"

namespace hjepa::model {

enum class Level : std::uint8_t { kHigh = 0, kMedium = 1, kLow = 2 };

const char* level_name(Level level);

// One prediction: the embedding at target is produced by `level` from the
// embedding at from (auto-regressive input) and, below the high level, the
// embedding at bracket (end of the enclosing coarser interval).
struct PlanStep {
  int target = 0;
  Level level = Level::kHigh;
  int from = 0;
  int bracket = -1;  // -1 for the high level

  bool operator==(const PlanStep&) const = default;
};

// Steps are listed in a valid execution order: all high steps, then medium,
// then low, each ascending in target.
struct LatentRolloutPlan {
  int horizon = 0;
  int depth_high = 0;
  int depth_medium = 0;
  int depth_low = 0;
  std::vector<PlanStep> steps;

  std::vector<int> offsets(Level level) const;
  int depth(Level level) const;
  // The step producing target in [1, horizon]; throws otherwise.
  const PlanStep& step_for(int target) const;
};

// Ownership: high takes multiples of h, medium multiples of m that are not
// multiples of h, low the remaining multiples of l (all offsets when l = 1). Accepts 1 <= l <= m <= h <= K_p with
// exact divisibility; equal depths leave the finer levels empty. Throws
// ConfigError on violations.
LatentRolloutPlan make_rollout_plan(int horizon, int depth_high,
                                    int depth_medium, int depth_low);

// Supplies the action applied at absolute offset `offset` inside a block that
// starts from embedding z_from. Teacher forcing ignores z_from and returns
// logged actions; closed-loop inference returns the actor's action for z_from.
using ActionSource = std::function<double(int offset, const nn::Vector& z_from)>;

// Concatenates [parts... , actions] into a single-row predictor input.
nn::Matrix predictor_input(std::initializer_list<const nn::Vector*> embeddings,
                           const std::vector<double>& actions);

// Lazily evaluated hierarchical latent rollout anchored at z_0 (offset 0).
// Offsets beyond the horizon chain a fresh plan from the embedding at the
// last full horizon, so arbitrarily long outages can be bridged.
class HierarchicalRollout {
 public:
  // medium/low may be null when the plan leaves that level empty.
  HierarchicalRollout(LatentRolloutPlan plan, const nn::Mlp& high,
                      const nn::Mlp* medium, const nn::Mlp* low,
                      nn::Vector z0, ActionSource actions);

  const nn::Vector& embedding(int offset);
  // Most recent predicted embedding at or before offset; differs from
  // embedding() only when depth_low > 1 leaves offsets unowned.
  const nn::Vector& latest(int offset) {
    return embedding(offset / plan_.depth_low * plan_.depth_low);
  }
  // Embeddings for offsets 1..horizon in order.
  std::vector<nn::Vector> horizon();
  const LatentRolloutPlan& plan() const { return plan_; }

 private:
  const nn::Vector& predict(int offset);
  const nn::Mlp& predictor(Level level) const;

  LatentRolloutPlan plan_;
  const nn::Mlp& high_;
  const nn::Mlp* medium_;
  const nn::Mlp* low_;
  ActionSource actions_;
  std::map<int, nn::Vector> cache_;
};

// Single-level auto-regressive rollout with stride `depth`: the embedding at
// s * depth comes from the one at (s - 1) * depth and `depth` actions.
class SingleLevelRollout {
 public:
  SingleLevelRollout(int depth, const nn::Mlp& predictor, nn::Vector z0,
                     ActionSource actions);

  // Embedding at a multiple of depth.
  const nn::Vector& embedding(int offset);
  // Most recent predicted embedding at or before offset.
  const nn::Vector& latest(int offset) { return embedding(offset / depth_ * depth_); }
  int depth() const { return depth_; }

 private:
  int depth_;
  const nn::Mlp& predictor_;
  ActionSource actions_;
  std::vector<nn::Vector> chain_;  // chain_[s] is the embedding at s * depth
};

}  // namespace hjepa::model
