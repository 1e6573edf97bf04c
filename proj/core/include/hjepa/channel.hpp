// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hjepa/random.hpp"

namespace hjepa::channel {

// PL = intercept + distance_coeff log10(d) + frequency_coeff log10(fc).
// Defaults are the indoor-factory sparse-clutter / high-BS NLoS law.
struct PathLossModel {
  double intercept = 32.4;
  double distance_coeff = 23.0;
  double frequency_coeff = 20.0;
};

// Throws ConfigError for distance < 1 m or non-positive frequency.
double pathloss_inf_sh_nlos(double distance_m, double carrier_ghz,
                            const PathLossModel& model = {});

struct LinkBudget {
  double tx_power_w = 1.0;
  double noise_power_w = 1e-12;
  double carrier_ghz = 3.5;
  double distance_m = 10.0;
  double bandwidth_hz = 1e6;
  double pathloss_db = 0.0;

  void validate() const;

  // Budget whose pathloss_db is derived from distance and carrier.
  static LinkBudget derived(double tx_power_w, double noise_power_w,
                            double carrier_ghz, double distance_m,
                            double bandwidth_hz,
                            const PathLossModel& model = {});
};

// |H|^2 of a Rayleigh block; constant within block_index.
struct FadingDraw {
  double gain_sq = 1.0;
  std::uint64_t block_index = 0;
};

struct TransmissionOutcome {
  bool success = false;
  double achieved_rate = 0.0;  // bit/s
  double required_rate = 0.0;  // bit/s
};

// Squared magnitude of a unit-variance circularly-symmetric complex Gaussian.
FadingDraw sample_fading(RandomStream& rng, std::uint64_t block_index = 0);

double snr(const LinkBudget& budget, const FadingDraw& fade);

double capacity(double snr_linear, double bandwidth_hz);

// Closed-form outage probability under Rayleigh fading.
double outage_prob_analytic(const LinkBudget& budget, double required_rate);

// Delivers payload_bits within slot_s seconds iff capacity >= bits / slot.
TransmissionOutcome transmit(double payload_bits, const LinkBudget& budget,
                             const FadingDraw& fade, double slot_s);

// Per-link fading process: one draw per block, replayed for repeated queries
// of the same block. Blocks must be visited in non-decreasing order.
class BlockFadingChannel {
 public:
  explicit BlockFadingChannel(RandomStream rng) : rng_(std::move(rng)) {}

  const FadingDraw& fade(std::uint64_t block_index);

 private:
  RandomStream rng_;
  std::optional<FadingDraw> current_;
};

// Splits a total bandwidth across devices.
using BandwidthAllocator =
    std::function<std::vector<double>(double total_hz, std::size_t devices)>;

std::vector<double> equal_split(double total_hz, std::size_t devices);

// Transmit power that yields the requested mean SNR (dB) at a given path loss.
double tx_power_for_mean_snr(double target_snr_db, double noise_power_w,
                             double pathloss_db);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Payload sizes.
double frame_payload_bits(int width, int height, int channels, int kappa,
                          int bits_per_pixel = 8);
double embedding_payload_bits(int embed_dim, int bits_per_value = 32);

}  // namespace hjepa::channel
