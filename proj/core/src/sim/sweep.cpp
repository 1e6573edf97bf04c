// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/sweep.hpp"

#include <algorithm>
#include <map>

#include "hjepa/error.hpp"
#include "hjepa/sim/parallel.hpp"

namespace hjepa::sim {
namespace {

constexpr std::uint64_t kSweepTag = 0x7377656570ull;
constexpr std::uint64_t kFadeTag = 1;
constexpr std::uint64_t kEpisodeTag = 2;

}  // namespace

void SweepConfig::validate() const {
  if (snr_db.empty()) throw ConfigError("sim.snr_grid must not be empty");
  if (!std::is_sorted(snr_db.begin(), snr_db.end()))
    throw ConfigError("sim.snr_grid must be ascending");
  if (!(total_bandwidth_hz > 0.0)) throw ConfigError("channel.total_bandwidth_hz must be positive");
  if (!(noise_power_w > 0.0)) throw ConfigError("channel.noise_power_w must be positive");
  if (!(carrier_ghz > 0.0)) throw ConfigError("channel.carrier_ghz must be positive");
  if (!(reference_distance_m >= 1.0) || !(min_distance_m >= 1.0) ||
      !(max_distance_m >= min_distance_m))
    throw ConfigError("channel distances must be >= 1 m with min <= max");
  if (episodes < 1 || steps < 1) throw ConfigError("sim.sweep_episodes and sim.episode_steps must be positive");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("sim.score_threshold must lie in [0, 1]");
  if (max_devices < 1) throw ConfigError("sim.max_devices must be at least 1");
  if (embedding_bits < 1) throw ConfigError("channel.embedding_bits must be positive");
  init.validate();
}

std::vector<SweepEpisode> make_sweep_episodes(const Environment& env,
                                              const SweepConfig& cfg,
                                              std::uint64_t seed, int jobs) {
  cfg.validate();
  std::vector<SweepEpisode> out(static_cast<std::size_t>(cfg.episodes));
  parallel_for(cfg.episodes, jobs, [&](int e) {
    const auto index = static_cast<std::uint64_t>(e);
    RandomStream rng = make_stream(seed, {kSweepTag, kEpisodeTag, index});
    SweepEpisode ep;
    ep.distance_m = uniform(rng, cfg.min_distance_m, cfg.max_distance_m);
    const plant::PlantState initial = sample_initial_state(rng, cfg.init);
    const std::uint64_t noise_seed = rng();
    ep.reference = make_reference(env, initial, noise_seed, cfg.steps);
    channel::BlockFadingChannel link(make_stream(seed, {kSweepTag, kFadeTag, index}));
    for (int k = 0; k < cfg.steps; ++k)
      ep.fade_gain_sq.push_back(link.fade(static_cast<std::uint64_t>(k)).gain_sq);
    out[static_cast<std::size_t>(e)] = std::move(ep);
  });
  return out;
}

double mean_score(const Environment& env, const ModelZoo& zoo,
                  const Method& method, const SweepConfig& cfg,
                  const std::vector<SweepEpisode>& episodes, double snr_db,
                  long long devices, int jobs) {
  if (devices < 1) throw ConfigError("device count must be positive");
  const double bits = payload_bits(method, zoo, env, cfg.embedding_bits);
  const int kappa = frames_per_update(method, zoo, env);
  const double ref_pl =
      channel::pathloss_inf_sh_nlos(cfg.reference_distance_m, cfg.carrier_ghz, cfg.pathloss);
  const double tx = channel::tx_power_for_mean_snr(snr_db, cfg.noise_power_w, ref_pl);
  const double bandwidth =
      channel::equal_split(cfg.total_bandwidth_hz, static_cast<std::size_t>(devices)).front();
  std::vector<double> scores(episodes.size());
  parallel_for(static_cast<int>(episodes.size()), jobs, [&](int e) {
    const SweepEpisode& ep = episodes[static_cast<std::size_t>(e)];
    const channel::LinkBudget budget = channel::LinkBudget::derived(
        tx, cfg.noise_power_w, cfg.carrier_ghz, ep.distance_m, bandwidth, cfg.pathloss);
    const double slot = env.plant.integration_dt;
    const auto delivered = [&](int k) {
      const channel::FadingDraw fade{ep.fade_gain_sq[static_cast<std::size_t>(k)],
                                     static_cast<std::uint64_t>(k)};
      return channel::transmit(bits, budget, fade, slot).success;
    };
    std::unique_ptr<Controller> c = make_controller(method, zoo, env);
    const EpisodeResult r =
        run_episode(env, *c, ep.reference.initial, episode_noise(ep.reference.noise_seed),
                    cfg.steps, delivered, kappa);
    scores[static_cast<std::size_t>(e)] =
        control_score(r.cost, ep.reference.c_oracle, ep.reference.c_zero, r.failed);
  });
  double sum = 0.0;
  for (double s : scores) sum += s;  // fixed order
  return sum / static_cast<double>(scores.size());
}

ScalabilityPoint find_max_devices(const Environment& env, const ModelZoo& zoo,
                                  const Method& method, const SweepConfig& cfg,
                                  const std::vector<SweepEpisode>& episodes,
                                  double snr_db, int jobs) {
  ScalabilityPoint p;
  p.method = method.name;
  p.snr_db = snr_db;
  p.bits = payload_bits(method, zoo, env, cfg.embedding_bits);
  std::map<long long, double> probed;
  const auto score_at = [&](long long n) {
    auto it = probed.find(n);
    if (it != probed.end()) return it->second;
    const double s = mean_score(env, zoo, method, cfg, episodes, snr_db, n, jobs);
    ++p.evaluations;
    p.episodes_simulated += static_cast<int>(episodes.size());
    return probed.emplace(n, s).first->second;
  };
  // Invariant: lo passes (or is 0), hi + 1 fails (or hi is the cap).
  long long lo = 0;
  long long hi = cfg.max_devices;
  if (score_at(hi) >= cfg.threshold) {
    lo = hi;
  } else {
    --hi;
    while (lo < hi) {
      const long long mid = lo + (hi - lo + 1) / 2;
      if (score_at(mid) >= cfg.threshold) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
  }
  p.max_devices = lo;
  p.score = score_at(std::max<long long>(lo, 1));
  return p;
}

SweepResult scalability_sweep(const Environment& env, const ModelZoo& zoo,
                              const std::vector<Method>& methods,
                              const SweepConfig& cfg, std::uint64_t seed,
                              int jobs) {
  const std::vector<SweepEpisode> episodes = make_sweep_episodes(env, cfg, seed, jobs);
  SweepResult result;
  for (const Method& method : methods) {
    long long previous = -1;
    bool violated = false;
    for (double snr : cfg.snr_db) {
      ScalabilityPoint p = find_max_devices(env, zoo, method, cfg, episodes, snr, jobs);
      if (p.max_devices < previous) violated = true;
      previous = p.max_devices;
      MetricRow row;
      row.method = method.name;
      row.comm_bits = p.bits;
      row.control_score = p.score;
      row.devices_supported = p.max_devices;
      row.target_snr_db = snr;
      result.rows.push_back(row);
      result.points.push_back(std::move(p));
    }
    if (violated) result.monotonicity_violations.push_back(method.name);
  }
  return result;
}

double percent_gain(long long a, long long b) {
  if (b == 0) return 0.0;
  return 100.0 * static_cast<double>(a - b) / static_cast<double>(b);
}

}  // namespace hjepa::sim
