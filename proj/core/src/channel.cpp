// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/channel.hpp"

#include <cmath>
#include <string>

#include "hjepa/error.hpp"

namespace hjepa::channel {

double pathloss_inf_sh_nlos(double distance_m, double carrier_ghz,
                            const PathLossModel& model) {
  if (!(distance_m >= 1.0))
    throw ConfigError("path loss needs distance >= 1 m, got " +
                      std::to_string(distance_m));
  if (!(carrier_ghz > 0)) throw ConfigError("carrier frequency must be > 0");
  return model.intercept + model.distance_coeff * std::log10(distance_m) +
         model.frequency_coeff * std::log10(carrier_ghz);
}

void LinkBudget::validate() const {
  if (!(tx_power_w > 0)) throw ConfigError("tx_power must be > 0");
  if (!(noise_power_w > 0)) throw ConfigError("noise_power must be > 0");
  if (!(carrier_ghz > 0)) throw ConfigError("carrier_freq must be > 0");
  if (!(distance_m > 0)) throw ConfigError("distance must be > 0");
  if (!(bandwidth_hz > 0)) throw ConfigError("bandwidth must be > 0");
  if (!(pathloss_db >= 0)) throw ConfigError("pathloss_db must be >= 0");
}

LinkBudget LinkBudget::derived(double tx_power_w, double noise_power_w,
                               double carrier_ghz, double distance_m,
                               double bandwidth_hz,
                               const PathLossModel& model) {
  LinkBudget b;
  b.tx_power_w = tx_power_w;
  b.noise_power_w = noise_power_w;
  b.carrier_ghz = carrier_ghz;
  b.distance_m = distance_m;
  b.bandwidth_hz = bandwidth_hz;
  b.pathloss_db = pathloss_inf_sh_nlos(distance_m, carrier_ghz, model);
  return b;
}

FadingDraw sample_fading(RandomStream& rng, std::uint64_t block_index) {
  // H = (a + jb) / sqrt(2) with a, b ~ N(0, 1)  =>  |H|^2 ~ Exp(1).
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {0.5 * (re * re + im * im), block_index};
}

double snr(const LinkBudget& budget, const FadingDraw& fade) {
  return std::pow(10.0, -budget.pathloss_db / 10.0) * budget.tx_power_w *
         fade.gain_sq / budget.noise_power_w;
}

double capacity(double snr_linear, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + snr_linear);
}

double outage_prob_analytic(const LinkBudget& budget, double required_rate) {
  const double threshold = std::exp2(required_rate / budget.bandwidth_hz) - 1.0;
  const double exponent = std::pow(10.0, budget.pathloss_db / 10.0) *
                          (budget.noise_power_w / budget.tx_power_w) *
                          threshold;
  return -std::expm1(-exponent);
}

TransmissionOutcome transmit(double payload_bits, const LinkBudget& budget,
                             const FadingDraw& fade, double slot_s) {
  if (!(slot_s > 0)) throw ConfigError("transmit: slot must be > 0");
  TransmissionOutcome out;
  out.required_rate = payload_bits / slot_s;
  out.achieved_rate = capacity(snr(budget, fade), budget.bandwidth_hz);
  out.success = out.achieved_rate >= out.required_rate;
  return out;
}

const FadingDraw& BlockFadingChannel::fade(std::uint64_t block_index) {
  if (current_ && block_index < current_->block_index)
    throw DataError("block fading: blocks must be visited in order");
  while (!current_ || current_->block_index < block_index) {
    const std::uint64_t next = current_ ? current_->block_index + 1 : 0;
    current_ = sample_fading(rng_, next);
  }
  return *current_;
}

std::vector<double> equal_split(double total_hz, std::size_t devices) {
  if (devices == 0) return {};
  return std::vector<double>(devices, total_hz / static_cast<double>(devices));
}

double tx_power_for_mean_snr(double target_snr_db, double noise_power_w,
                             double pathloss_db) {
  // E|H|^2 = 1, so mean SNR = 10^(-PL/10) P / N_c.
  return db_to_linear(target_snr_db) * noise_power_w *
         std::pow(10.0, pathloss_db / 10.0);
}

double frame_payload_bits(int width, int height, int channels, int kappa,
                          int bits_per_pixel) {
  return static_cast<double>(width) * height * channels * kappa *
         bits_per_pixel;
}

double embedding_payload_bits(int embed_dim, int bits_per_value) {
  return static_cast<double>(embed_dim) * bits_per_value;
}

}  // namespace hjepa::channel
