// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/evaluate.hpp"

#include <cmath>

#include "hjepa/error.hpp"
#include "hjepa/sim/parallel.hpp"

namespace hjepa::sim {
namespace {

constexpr std::uint64_t kPredictionTag = 0x70726564ull;

void require_test_frames(const data::Dataset& frames) {
  if (frames.type != data::RecordType::kStatePairs)
    throw DataError("evaluation needs a state-pairs dataset");
  if (frames.test_count() < 1) throw DataError("evaluation needs held-out trajectories");
}

double mean_of(const std::vector<std::vector<double>>& table, std::size_t column) {
  double sum = 0.0;
  for (const std::vector<double>& row : table) sum += row[column];
  return sum / static_cast<double>(table.size());
}

}  // namespace

EvaluationResult eval_encoding(const Environment& env, const ModelZoo& zoo,
                               const std::vector<Method>& methods,
                               const data::Dataset& frames, int jobs) {
  require_test_frames(frames);
  const double range = env.plant.u_max - env.plant.u_min;
  const int tests = frames.test_count();
  EvaluationResult result;
  for (const Method& method : methods) {
    const int kappa = frames_per_update(method, zoo, env);
    std::vector<std::vector<double>> table(static_cast<std::size_t>(tests));
    parallel_for(tests, jobs, [&](int t) {
      const int traj = frames.train_count + t;
      const data::Trajectory& tr = frames.trajectories[static_cast<std::size_t>(traj)];
      std::vector<double> errs(static_cast<std::size_t>(tr.length()));
      for (int k = 0; k < tr.length(); ++k) {
        // A fresh controller per step: each step is its own delivered update.
        std::unique_ptr<Controller> c = make_controller(method, zoo, env);
        std::vector<float> stacked;
        StepContext ctx{k, &tr.states[static_cast<std::size_t>(k)], nullptr};
        if (kappa > 0) {
          const std::pair<int, int> item{traj, k};
          const nn::Matrix row = data::stacked_rows(frames, {&item, 1}, kappa);
          stacked.assign(row.data(), row.data() + row.size());
          ctx.received = &stacked;
        }
        const double u = plant::clamp_action(c->act(ctx), env.plant).force;
        const double u_star =
            plant::oracle_policy(tr.states[static_cast<std::size_t>(k)], env.lqr.gain, env.plant)
                .force;
        errs[static_cast<std::size_t>(k)] = std::abs(u - u_star) / range;
      }
      // Average over the trajectory's steps, so the table has one column.
      double sum = 0.0;
      for (double e : errs) sum += e;
      table[static_cast<std::size_t>(t)] = {sum / static_cast<double>(errs.size())};
    });
    MetricRow row;
    row.method = method.name;
    row.horizon_offset = 0;
    row.control_error = mean_of(table, 0);
    row.comm_bits = payload_bits(method, zoo, env);
    result.rows.push_back(row);
    result.errors[method.name] = std::move(table);
  }
  return result;
}

EvaluationResult eval_prediction(const Environment& env, const ModelZoo& zoo,
                                 const std::vector<Method>& methods,
                                 const data::Dataset& frames, int horizon,
                                 std::uint64_t seed, int jobs) {
  require_test_frames(frames);
  if (horizon < 1) throw ConfigError("prediction horizon must be at least 1");
  const double range = env.plant.u_max - env.plant.u_min;
  const int tests = frames.test_count();
  const auto first_only = [](int step) { return step == 0; };
  EvaluationResult result;
  for (const Method& method : methods) {
    const int kappa = frames_per_update(method, zoo, env);
    std::vector<std::vector<double>> table(static_cast<std::size_t>(tests));
    parallel_for(tests, jobs, [&](int t) {
      const data::Trajectory& tr =
          frames.trajectories[static_cast<std::size_t>(frames.train_count + t)];
      std::unique_ptr<Controller> c = make_controller(method, zoo, env);
      const EpisodeResult ep = run_episode(
          env, *c, tr.states.front(),
          make_stream(seed, {kPredictionTag, static_cast<std::uint64_t>(t)}),
          horizon + 1, first_only, kappa);
      std::vector<double> errs(static_cast<std::size_t>(horizon),
                               std::numeric_limits<double>::quiet_NaN());
      for (int j = 1; j <= horizon && j < static_cast<int>(ep.actions.size()); ++j) {
        const double u_star = plant::oracle_policy(ep.states[static_cast<std::size_t>(j)],
                                                   env.lqr.gain, env.plant)
                                  .force;
        errs[static_cast<std::size_t>(j - 1)] =
            std::abs(ep.actions[static_cast<std::size_t>(j)] - u_star) / range;
      }
      table[static_cast<std::size_t>(t)] = std::move(errs);
    });
    for (int j = 1; j <= horizon; ++j) {
      MetricRow row;
      row.method = method.name;
      row.horizon_offset = j;
      row.control_error = mean_of(table, static_cast<std::size_t>(j - 1));
      row.comm_bits = payload_bits(method, zoo, env);
      result.rows.push_back(row);
    }
    result.errors[method.name] = std::move(table);
  }
  return result;
}

std::vector<double> errors_at(const EvaluationResult& result,
                              const std::string& method, int column) {
  auto it = result.errors.find(method);
  if (it == result.errors.end()) throw DataError("no evaluation for method '" + method + "'");
  std::vector<double> out;
  for (const std::vector<double>& row : it->second)
    out.push_back(row.at(static_cast<std::size_t>(column)));
  return out;
}

}  // namespace hjepa::sim
