// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/generate.hpp"

#include <string>

#include "hjepa/error.hpp"
#include "hjepa/sim/parallel.hpp"

namespace hjepa::sim {

void GenerationConfig::validate() const {
  if (trajectory_length < 2) throw ConfigError("sim.trajectory_length must be at least 2");
  if (train_high < 1 || test_high < 0 || train_ml < 1 || test_ml < 0)
    throw ConfigError("sim dataset counts must be positive (test counts non-negative)");
  if (!(exploration_std >= 0.0)) throw ConfigError("sim.exploration_std must be non-negative");
  if (max_attempts < 1) throw ConfigError("sim.max_attempts must be at least 1");
  init.validate();
}

data::Trajectory generate_trajectory(const Environment& env,
                                     const GenerationConfig& cfg,
                                     std::uint64_t seed, DatasetTag tag,
                                     int index) {
  const std::size_t frame = env.render.frame_size();
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    RandomStream rng = make_stream(
        seed, {static_cast<std::uint64_t>(tag), static_cast<std::uint64_t>(index),
               static_cast<std::uint64_t>(attempt)});
    data::Trajectory t;
    t.seed = seed;
    t.attempts = static_cast<std::uint32_t>(attempt + 1);
    t.features.reserve(frame * static_cast<std::size_t>(cfg.trajectory_length));
    plant::PlantState s = sample_initial_state(rng, cfg.init);
    bool failed = false;
    for (int k = 0; k < cfg.trajectory_length; ++k) {
      if (plant::has_failed(s, env.plant)) {
        failed = true;
        break;
      }
      const double u_star = plant::oracle_policy(s, env.lqr.gain, env.plant).force;
      const double noise = cfg.exploration_std > 0.0
                               ? cfg.exploration_std * standard_normal(rng)
                               : 0.0;
      const plant::Action u = plant::clamp_action(u_star + noise, env.plant);
      const plant::Observation obs = plant::render_observation(s, env.render);
      t.states.push_back(s);
      t.oracle.push_back(u_star);
      t.applied.push_back(u.force);
      t.features.insert(t.features.end(), obs.begin(), obs.end());
      s = plant::step_dynamics(s, u, env.plant, rng);
    }
    if (!failed) return t;
  }
  throw DataError("trajectory " + std::to_string(index) + " diverged in all " +
                  std::to_string(cfg.max_attempts) + " attempts");
}

data::Dataset generate_state_dataset(const Environment& env,
                                     const GenerationConfig& cfg,
                                     std::uint64_t seed, DatasetTag tag,
                                     int train, int test, int stride, int jobs) {
  cfg.validate();
  data::Dataset ds;
  ds.type = data::RecordType::kStatePairs;
  ds.stride = stride;
  ds.feature_dim = static_cast<int>(env.render.frame_size());
  ds.frame_width = env.render.width;
  ds.frame_height = env.render.height;
  ds.frame_channels = env.render.channels;
  ds.train_count = train;
  ds.trajectories.resize(static_cast<std::size_t>(train + test));
  parallel_for(train + test, jobs, [&](int i) {
    ds.trajectories[static_cast<std::size_t>(i)] =
        generate_trajectory(env, cfg, seed, tag, i);
  });
  data::round_to_f32(ds);
  return ds;
}

data::Dataset embed_dataset(const data::Dataset& frames,
                            const nn::Mlp& encoder, int kappa, int stride,
                            int jobs) {
  if (frames.type != data::RecordType::kStatePairs)
    throw DataError("embedding needs a state-pairs dataset");
  data::Dataset out;
  out.type = data::RecordType::kEmbeddingPairs;
  out.stride = stride;
  out.feature_dim = encoder.output_dim();
  out.train_count = frames.train_count;
  out.trajectories.resize(frames.trajectories.size());
  parallel_for(static_cast<int>(frames.trajectories.size()), jobs, [&](int i) {
    const data::Trajectory& src = frames.trajectories[static_cast<std::size_t>(i)];
    data::Trajectory t = src;
    std::vector<std::pair<int, int>> items;
    for (int k = 0; k < src.length(); ++k) items.push_back({i, k});
    const nn::Matrix z = encoder.forward(data::stacked_rows(frames, items, kappa));
    t.features.resize(static_cast<std::size_t>(z.size()));
    for (Eigen::Index r = 0; r < z.rows(); ++r)
      for (Eigen::Index c = 0; c < z.cols(); ++c)
        t.features[static_cast<std::size_t>(r * z.cols() + c)] = static_cast<float>(z(r, c));
    out.trajectories[static_cast<std::size_t>(i)] = std::move(t);
  });
  data::round_to_f32(out);
  return out;
}

}  // namespace hjepa::sim
