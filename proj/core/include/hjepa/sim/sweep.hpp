// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hjepa/channel.hpp"
#include "hjepa/sim/control.hpp"
#include "hjepa/sim/metrics.hpp"

namespace hjepa::sim {

struct SweepConfig {
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25};
  double total_bandwidth_hz = 100e6;
  double noise_power_w = 1e-12;
  double carrier_ghz = 3.5;
  double reference_distance_m = 30.0;  // where the target mean SNR holds
  double min_distance_m = 10.0;
  double max_distance_m = 50.0;
  channel::PathLossModel pathloss;
  int episodes = 20;
  int steps = 100;
  double threshold = 0.62;
  int max_devices = 4096;
  int embedding_bits = 32;
  InitialStateRange init;

  void validate() const;
};

// One simulated episode of a representative device: its distance, start
// state, process-noise seed and per-slot fading gains, shared by every
// method and device count (common random numbers).
struct SweepEpisode {
  double distance_m = 0.0;
  EpisodeReference reference;
  std::vector<double> fade_gain_sq;
};

std::vector<SweepEpisode> make_sweep_episodes(const Environment& env,
                                              const SweepConfig& cfg,
                                              std::uint64_t seed, int jobs);

// Mean control score over the episodes when `devices` share the band
// equally at the given target SNR. No retransmission: an update lost to
// outage is simply missing.
double mean_score(const Environment& env, const ModelZoo& zoo,
                  const Method& method, const SweepConfig& cfg,
                  const std::vector<SweepEpisode>& episodes, double snr_db,
                  long long devices, int jobs);

struct ScalabilityPoint {
  std::string method;
  double snr_db = 0.0;
  long long max_devices = 0;  // 0 when even a single device misses the bar
  double score = 0.0;         // mean score at max_devices (at 1 when 0)
  double bits = 0.0;
  int evaluations = 0;        // binary-search probes
  int episodes_simulated = 0;
};

// Largest device count in [1, max_devices] whose mean score reaches the
// threshold, found by binary search.
ScalabilityPoint find_max_devices(const Environment& env, const ModelZoo& zoo,
                                  const Method& method, const SweepConfig& cfg,
                                  const std::vector<SweepEpisode>& episodes,
                                  double snr_db, int jobs);

struct SweepResult {
  std::vector<ScalabilityPoint> points;  // method-major, SNR ascending
  std::vector<MetricRow> rows;
  // Methods whose device count decreases somewhere along the SNR grid.
  std::vector<std::string> monotonicity_violations;
};

SweepResult scalability_sweep(const Environment& env, const ModelZoo& zoo,
                              const std::vector<Method>& methods,
                              const SweepConfig& cfg, std::uint64_t seed,
                              int jobs);

// 100 * (a - b) / b, or 0 when b == 0.
double percent_gain(long long a, long long b);

}  // namespace hjepa::sim
