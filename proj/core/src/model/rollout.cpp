// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/model/rollout.hpp"

#include <string>

#include "hjepa/error.hpp"

namespace hjepa::model {

const char* level_name(Level level) {
  switch (level) {
    case Level::kHigh:
      return "high";
    case Level::kMedium:
      return "medium";
    case Level::kLow:
      return "low";
  }
  return "?";
}

std::vector<int> LatentRolloutPlan::offsets(Level level) const {
  std::vector<int> out;
  for (const PlanStep& s : steps)
    if (s.level == level) out.push_back(s.target);
  return out;
}

int LatentRolloutPlan::depth(Level level) const {
  switch (level) {
    case Level::kHigh:
      return depth_high;
    case Level::kMedium:
      return depth_medium;
    case Level::kLow:
      return depth_low;
  }
  return 0;
}

const PlanStep& LatentRolloutPlan::step_for(int target) const {
  for (const PlanStep& s : steps)
    if (s.target == target) return s;
  throw ShapeError("rollout plan has no step for offset " + std::to_string(target));
}

LatentRolloutPlan make_rollout_plan(int horizon, int h, int m, int l) {
  if (!(l >= 1 && l <= m && m <= h && h <= horizon))
    throw ConfigError("rollout depths must satisfy 1 <= l <= m <= h <= horizon");
  if (horizon % h != 0 || h % m != 0 || m % l != 0)
    throw ConfigError("rollout depths must divide each other and the horizon");
  LatentRolloutPlan plan{horizon, h, m, l, {}};
  for (int t = h; t <= horizon; t += h)
    plan.steps.push_back({t, Level::kHigh, t - h, -1});
  for (int t = m; t <= horizon; t += m)
    if (t % h != 0)
      plan.steps.push_back({t, Level::kMedium, t - m, (t / h + 1) * h});
  for (int t = l; t <= horizon; t += l)
    if (t % m != 0)
      plan.steps.push_back({t, Level::kLow, t - l, (t / m + 1) * m});
  return plan;
}

nn::Matrix predictor_input(std::initializer_list<const nn::Vector*> embeddings,
                           const std::vector<double>& actions) {
  Eigen::Index width = static_cast<Eigen::Index>(actions.size());
  for (const nn::Vector* e : embeddings) width += e->size();
  nn::Matrix row(1, width);
  Eigen::Index col = 0;
  for (const nn::Vector* e : embeddings) {
    row.block(0, col, 1, e->size()) = e->transpose();
    col += e->size();
  }
  for (double a : actions) row(0, col++) = a;
  return row;
}

HierarchicalRollout::HierarchicalRollout(LatentRolloutPlan plan,
                                         const nn::Mlp& high,
                                         const nn::Mlp* medium,
                                         const nn::Mlp* low, nn::Vector z0,
                                         ActionSource actions)
    : plan_(std::move(plan)),
      high_(high),
      medium_(medium),
      low_(low),
      actions_(std::move(actions)) {
  if (!plan_.offsets(Level::kMedium).empty() && medium_ == nullptr)
    throw ShapeError("plan needs a medium-level predictor");
  if (!plan_.offsets(Level::kLow).empty() && low_ == nullptr)
    throw ShapeError("plan needs a low-level predictor");
  cache_.emplace(0, std::move(z0));
}

const nn::Mlp& HierarchicalRollout::predictor(Level level) const {
  switch (level) {
    case Level::kMedium:
      return *medium_;
    case Level::kLow:
      return *low_;
    case Level::kHigh:
      break;
  }
  return high_;
}

const nn::Vector& HierarchicalRollout::embedding(int offset) {
  if (offset < 0) throw ShapeError("rollout offsets are non-negative");
  auto it = cache_.find(offset);
  if (it != cache_.end()) return it->second;
  return predict(offset);
}

const nn::Vector& HierarchicalRollout::predict(int offset) {
  // Offsets past the horizon reuse the plan relative to the last chunk start.
  const int chunk_start = ((offset - 1) / plan_.horizon) * plan_.horizon;
  const PlanStep& step = plan_.step_for(offset - chunk_start);
  const int from = chunk_start + step.from;
  const nn::Vector z_from = embedding(from);
  const int depth = plan_.depth(step.level);
  std::vector<double> block(static_cast<std::size_t>(depth));
  for (int i = 0; i < depth; ++i) block[i] = actions_(from + i, z_from);
  nn::Matrix input;
  if (step.level == Level::kHigh) {
    input = predictor_input({&z_from}, block);
  } else {
    const nn::Vector z_bracket = embedding(chunk_start + step.bracket);
    input = predictor_input({&z_from, &z_bracket}, block);
  }
  nn::Vector out = predictor(step.level).forward(input).row(0).transpose();
  return cache_.emplace(offset, std::move(out)).first->second;
}

std::vector<nn::Vector> HierarchicalRollout::horizon() {
  std::vector<nn::Vector> out;
  out.reserve(static_cast<std::size_t>(plan_.horizon));
  for (int j = 1; j <= plan_.horizon; ++j) out.push_back(embedding(j));
  return out;
}

SingleLevelRollout::SingleLevelRollout(int depth, const nn::Mlp& predictor,
                                       nn::Vector z0, ActionSource actions)
    : depth_(depth), predictor_(predictor), actions_(std::move(actions)) {
  if (depth_ < 1) throw ConfigError("single-level depth must be >= 1");
  chain_.push_back(std::move(z0));
}

const nn::Vector& SingleLevelRollout::embedding(int offset) {
  if (offset < 0 || offset % depth_ != 0)
    throw ShapeError("single-level rollout offset must be a multiple of its depth");
  const std::size_t s = static_cast<std::size_t>(offset / depth_);
  while (chain_.size() <= s) {
    const int from = static_cast<int>(chain_.size() - 1) * depth_;
    const nn::Vector z_from = chain_.back();
    std::vector<double> block(static_cast<std::size_t>(depth_));
    for (int i = 0; i < depth_; ++i) block[i] = actions_(from + i, z_from);
    chain_.push_back(
        predictor_.forward(predictor_input({&z_from}, block)).row(0).transpose());
  }
  return chain_[s];
}

}  // namespace hjepa::model
