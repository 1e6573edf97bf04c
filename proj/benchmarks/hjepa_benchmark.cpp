// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "hjepa/channel.hpp"
#include "hjepa/model/networks.hpp"
#include "hjepa/model/rollout.hpp"
#include "hjepa/nn/loss.hpp"
#include "hjepa/nn/mlp.hpp"
#include "hjepa/plant.hpp"
#include "hjepa/render.hpp"
#include "hjepa/sim/control.hpp"
#include "hjepa/sim/environment.hpp"

namespace hjepa {
namespace {

nn::Matrix RandomMatrix(Eigen::Index r, Eigen::Index c, RandomStream& rng) {
  nn::Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = standard_normal(rng);
  return m;
}

// Default-size encoder on sparse rendered frames, as seen in training.
nn::Mlp DefaultEncoder(RandomStream& rng) {
  const model::HjepaConfig cfg;
  nn::Mlp enc = model::make_encoder(2 * 1024, cfg);
  enc.init_glorot(rng);
  enc.set_input_statistics(nn::Vector::Zero(2048), nn::Vector::Ones(2048));
  return enc;
}

nn::Matrix FrameBatch(int rows) {
  const plant::RenderConfig render;
  nn::Matrix x(rows, 2 * 1024);
  for (int r = 0; r < rows; ++r) {
    const plant::PlantState s{0.01 * r, 0.0, 0.001 * r, 0.0};
    const plant::Observation f = plant::render_observation(s, render);
    for (int i = 0; i < 1024; ++i) x(r, i) = x(r, 1024 + i) = f[static_cast<std::size_t>(i)];
  }
  return x;
}

void BM_EncoderForward(benchmark::State& state) {
  RandomStream rng(1);
  const nn::Mlp enc = DefaultEncoder(rng);
  const nn::Matrix x = FrameBatch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enc.forward(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncoderForward)->Arg(1)->Arg(256);

void BM_EncoderForwardBackward(benchmark::State& state) {
  RandomStream rng(2);
  const nn::Mlp enc = DefaultEncoder(rng);
  const nn::Matrix x = FrameBatch(static_cast<int>(state.range(0)));
  const nn::Matrix g = RandomMatrix(x.rows(), enc.output_dim(), rng);
  for (auto _ : state) {
    nn::Mlp::Cache cache;
    enc.forward(x, &cache);
    benchmark::DoNotOptimize(enc.backward(cache, g, false));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncoderForwardBackward)->Arg(256);

void BM_CosineLoss(benchmark::State& state) {
  RandomStream rng(3);
  const nn::Matrix p = RandomMatrix(256, 256, rng);
  const nn::Matrix t = RandomMatrix(256, 256, rng);
  for (auto _ : state) benchmark::DoNotOptimize(nn::cosine_loss(p, t));
}
BENCHMARK(BM_CosineLoss);

void BM_RenderFrame(benchmark::State& state) {
  plant::RenderConfig render;
  render.supersample = static_cast<int>(state.range(0));
  const plant::PlantState s{0.3, 0.0, 0.04, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(plant::render_observation(s, render));
}
BENCHMARK(BM_RenderFrame)->Arg(1)->Arg(4);

void BM_PlantStep(benchmark::State& state) {
  const plant::PlantParams params;
  const plant::LqrSolution lqr = plant::solve_lqr(plant::linearize(params), plant::LqrWeights{});
  RandomStream rng(4);
  plant::PlantState s{0.1, 0.0, 0.03, 0.0};
  for (auto _ : state) {
    s = plant::step_dynamics(s, plant::oracle_policy(s, lqr.gain, params), params, rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PlantStep);

void BM_HierarchicalRollout(benchmark::State& state) {
  const model::HjepaConfig cfg;
  RandomStream rng(5);
  nn::Mlp high = model::make_high_predictor(cfg, cfg.depth_high);
  nn::Mlp medium = model::make_bracket_predictor(cfg, cfg.depth_medium);
  nn::Mlp low = model::make_bracket_predictor(cfg, cfg.depth_low);
  for (nn::Mlp* n : {&high, &medium, &low}) n->init_glorot(rng);
  const nn::Vector z0 = RandomMatrix(cfg.embed_dim, 1, rng).col(0);
  const model::LatentRolloutPlan plan =
      model::make_rollout_plan(cfg.horizon, cfg.depth_high, cfg.depth_medium, cfg.depth_low);
  for (auto _ : state) {
    model::HierarchicalRollout r(plan, high, &medium, &low, z0,
                                 [](int, const nn::Vector&) { return 0.0; });
    benchmark::DoNotOptimize(r.horizon());
  }
}
BENCHMARK(BM_HierarchicalRollout);

void BM_Transmit(benchmark::State& state) {
  const channel::LinkBudget budget =
      channel::LinkBudget::derived(0.01, 1e-12, 3.5, 30.0, 1e6);
  RandomStream rng(6);
  for (auto _ : state)
    benchmark::DoNotOptimize(channel::transmit(8192, budget, channel::sample_fading(rng), 1e-3));
}
BENCHMARK(BM_Transmit);

void BM_OracleEpisode(benchmark::State& state) {
  const sim::Environment env =
      sim::make_environment(plant::PlantParams{}, plant::LqrWeights{}, plant::RenderConfig{});
  const plant::PlantState x0{0.1, 0.0, 0.03, 0.0};
  for (auto _ : state) {
    auto c = sim::make_controller(sim::parse_method("oracle"), {}, env);
    benchmark::DoNotOptimize(sim::run_episode(env, *c, x0, sim::episode_noise(1), 100,
                                              [](int) { return true; }, 2));
  }
}
BENCHMARK(BM_OracleEpisode);

}  // namespace
}  // namespace hjepa

BENCHMARK_MAIN();
