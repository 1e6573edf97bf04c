// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/cli/config.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/sim/control.hpp"

namespace hjepa::cli {
namespace {

struct Field {
  std::string key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view)> set;
};

template <typename Ref>
Field real_field(std::string key, Ref ref) {
  return {key, [ref](const ExperimentConfig& c) { return format_real(ref(c)); },
          [ref, key](ExperimentConfig& c, std::string_view v) { ref(c) = parse_real(v, key); }};
}

template <typename Ref>
Field int_field(std::string key, Ref ref) {
  return {key, [ref](const ExperimentConfig& c) { return std::to_string(ref(c)); },
          [ref, key](ExperimentConfig& c, std::string_view v) {
            const long long x = parse_int(v, key);
            if (x < -2147483647LL || x > 2147483647LL)
              throw ConfigError(key + " is out of range");
            ref(c) = static_cast<int>(x);
          }};
}

template <typename Ref>
Field bool_field(std::string key, Ref ref) {
  return {key, [ref](const ExperimentConfig& c) { return std::string(ref(c) ? "true" : "false"); },
          [ref, key](ExperimentConfig& c, std::string_view v) { ref(c) = parse_bool(v, key); }};
}

template <typename Ref>
Field string_field(std::string key, Ref ref) {
  return {key, [ref](const ExperimentConfig& c) { return std::string(ref(c)); },
          [ref](ExperimentConfig& c, std::string_view v) { ref(c) = std::string(v); }};
}

template <typename Ref>
Field int_list_field(std::string key, Ref ref) {
  return {key,
          [ref](const ExperimentConfig& c) {
            std::string out;
            for (int x : ref(c)) out += (out.empty() ? "" : ",") + std::to_string(x);
            return out;
          },
          [ref, key](ExperimentConfig& c, std::string_view v) {
            std::vector<int> xs;
            for (const std::string& item : split_list(v))
              xs.push_back(static_cast<int>(parse_int(item, key)));
            ref(c) = std::move(xs);
          }};
}

template <typename Ref>
Field real_list_field(std::string key, Ref ref) {
  return {key,
          [ref](const ExperimentConfig& c) {
            std::string out;
            for (double x : ref(c)) out += (out.empty() ? "" : ",") + format_real(x);
            return out;
          },
          [ref, key](ExperimentConfig& c, std::string_view v) {
            std::vector<double> xs;
            for (const std::string& item : split_list(v)) xs.push_back(parse_real(item, key));
            ref(c) = std::move(xs);
          }};
}

#define HJ_REF(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real_field("plant.cart_mass", HJ_REF(plant.cart_mass)));
    f.push_back(real_field("plant.pole_mass", HJ_REF(plant.pole_mass)));
    f.push_back(real_field("plant.pole_half_length", HJ_REF(plant.pole_half_length)));
    f.push_back(real_field("plant.gravity", HJ_REF(plant.gravity)));
    f.push_back(real_field("plant.integration_dt", HJ_REF(plant.integration_dt)));
    f.push_back(real_field("plant.process_noise_std", HJ_REF(plant.process_noise_std)));
    f.push_back(real_field("plant.u_max", HJ_REF(plant.u_max)));
    f.push_back(real_field("plant.u_min", HJ_REF(plant.u_min)));
    f.push_back(real_field("plant.track_limit", HJ_REF(plant.track_limit)));
    f.push_back(real_field("plant.q_position", HJ_REF(weights.q_diag[0])));
    f.push_back(real_field("plant.q_velocity", HJ_REF(weights.q_diag[1])));
    f.push_back(real_field("plant.q_angle", HJ_REF(weights.q_diag[2])));
    f.push_back(real_field("plant.q_angular_velocity", HJ_REF(weights.q_diag[3])));
    f.push_back(real_field("plant.r", HJ_REF(weights.r)));
    f.push_back(int_field("plant.render_width", HJ_REF(render.width)));
    f.push_back(int_field("plant.render_height", HJ_REF(render.height)));
    f.push_back(int_field("plant.render_channels", HJ_REF(render.channels)));
    f.push_back(real_field("plant.world_window", HJ_REF(render.world_window)));
    f.push_back(int_field("plant.render_supersample", HJ_REF(render.supersample)));

    f.push_back(real_field("channel.total_bandwidth_hz", HJ_REF(sweep.total_bandwidth_hz)));
    f.push_back(real_field("channel.noise_power_w", HJ_REF(sweep.noise_power_w)));
    f.push_back(real_field("channel.carrier_ghz", HJ_REF(sweep.carrier_ghz)));
    f.push_back(real_field("channel.reference_distance_m", HJ_REF(sweep.reference_distance_m)));
    f.push_back(real_field("channel.min_distance_m", HJ_REF(sweep.min_distance_m)));
    f.push_back(real_field("channel.max_distance_m", HJ_REF(sweep.max_distance_m)));
    f.push_back(real_field("channel.pathloss_intercept", HJ_REF(sweep.pathloss.intercept)));
    f.push_back(real_field("channel.pathloss_distance_coeff", HJ_REF(sweep.pathloss.distance_coeff)));
    f.push_back(real_field("channel.pathloss_frequency_coeff", HJ_REF(sweep.pathloss.frequency_coeff)));
    f.push_back(int_field("channel.embedding_bits", HJ_REF(sweep.embedding_bits)));

    f.push_back(int_field("hjepa.embed_dim", HJ_REF(hjepa.embed_dim)));
    f.push_back(int_field("hjepa.frame_stack", HJ_REF(hjepa.frame_stack)));
    f.push_back(int_field("hjepa.horizon", HJ_REF(hjepa.horizon)));
    f.push_back(int_field("hjepa.depth_h", HJ_REF(hjepa.depth_high)));
    f.push_back(int_field("hjepa.depth_m", HJ_REF(hjepa.depth_medium)));
    f.push_back(int_field("hjepa.depth_l", HJ_REF(hjepa.depth_low)));
    f.push_back(real_field("hjepa.ema_rate", HJ_REF(hjepa.ema_rate)));
    f.push_back(int_list_field("hjepa.encoder_widths", HJ_REF(hjepa.encoder_widths)));
    f.push_back(int_field("hjepa.predictor_hidden", HJ_REF(hjepa.predictor_hidden)));
    f.push_back(int_field("hjepa.actor_hidden", HJ_REF(hjepa.actor_hidden)));

    f.push_back(real_field("train.learning_rate", HJ_REF(train.sgd.learning_rate)));
    f.push_back(int_field("train.batch_size", HJ_REF(train.sgd.batch_size)));
    f.push_back(real_field("train.clip_norm", HJ_REF(train.sgd.clip_norm)));
    f.push_back(bool_field("train.linear_decay", HJ_REF(train.sgd.linear_decay)));
    f.push_back(int_field("train.epochs_high", HJ_REF(train.epochs_high)));
    f.push_back(int_field("train.epochs_medium", HJ_REF(train.epochs_medium)));
    f.push_back(int_field("train.epochs_low", HJ_REF(train.epochs_low)));
    f.push_back(int_field("train.epochs_actor", HJ_REF(train.epochs_actor)));
    f.push_back(real_field("train.actor_lr", HJ_REF(train.actor_learning_rate)));
    f.push_back(int_field("train.epochs_supervised", HJ_REF(train.epochs_supervised)));
    f.push_back(int_field("train.epochs_autoencoder", HJ_REF(train.epochs_autoencoder)));
    f.push_back(real_field("train.autoencoder_clip_norm", HJ_REF(train.autoencoder_clip_norm)));
    f.push_back(int_field("train.pair_stride", HJ_REF(train.pair_stride)));
    f.push_back(bool_field("train.predicted_brackets", HJ_REF(train.predicted_brackets)));
    f.push_back(int_list_field("train.jepa_depths", HJ_REF(jepa_depths)));
    f.push_back(int_list_field("train.supervised_stacks", HJ_REF(supervised_stacks)));
    f.push_back(bool_field("train.autoencoder", HJ_REF(train_autoencoder)));

    f.push_back(int_field("sim.trajectory_length", HJ_REF(generation.trajectory_length)));
    f.push_back(int_field("sim.train_high", HJ_REF(generation.train_high)));
    f.push_back(int_field("sim.test_high", HJ_REF(generation.test_high)));
    f.push_back(int_field("sim.train_ml", HJ_REF(generation.train_ml)));
    f.push_back(int_field("sim.test_ml", HJ_REF(generation.test_ml)));
    f.push_back(real_field("sim.exploration_std", HJ_REF(generation.exploration_std)));
    f.push_back(real_field("sim.init_position", HJ_REF(generation.init.position)));
    f.push_back(real_field("sim.init_angle", HJ_REF(generation.init.angle)));
    f.push_back(int_field("sim.max_attempts", HJ_REF(generation.max_attempts)));
    f.push_back(int_field("sim.episode_steps", HJ_REF(sweep.steps)));
    f.push_back(int_field("sim.sweep_episodes", HJ_REF(sweep.episodes)));
    f.push_back(real_field("sim.score_threshold", HJ_REF(sweep.threshold)));
    f.push_back(real_list_field("sim.snr_grid", HJ_REF(sweep.snr_db)));
    f.push_back(int_field("sim.max_devices", HJ_REF(sweep.max_devices)));
    f.push_back(string_field("sim.encoding_methods", HJ_REF(encoding_methods)));
    f.push_back(string_field("sim.prediction_methods", HJ_REF(prediction_methods)));
    f.push_back(string_field("sim.sweep_methods", HJ_REF(sweep_methods)));

    f.push_back({"seed", [](const ExperimentConfig& c) { return std::to_string(c.seed); },
                 [](ExperimentConfig& c, std::string_view v) { c.seed = parse_u64(v, "seed"); }});
    f.push_back(string_field("out_dir", HJ_REF(out_dir)));
    return f;
  }();
  return table;
}

#undef HJ_REF

}  // namespace

void ExperimentConfig::validate() const {
  plant.validate();
  render.validate();
  hjepa.validate();
  train.validate();
  generation.validate();
  sweep.validate();
  for (double q : weights.q_diag)
    if (!(q >= 0.0)) throw ConfigError("plant.q_* weights must be non-negative");
  if (!(weights.r > 0.0)) throw ConfigError("plant.r must be positive");
  for (int d : jepa_depths)
    if (d < 1 || d > hjepa.horizon)
      throw ConfigError("train.jepa_depths entries must lie in [1, hjepa.horizon]");
  for (int k : supervised_stacks)
    if (k < 1) throw ConfigError("train.supervised_stacks entries must be >= 1");
  if (generation.trajectory_length <= hjepa.horizon)
    throw ConfigError("sim.trajectory_length must exceed hjepa.horizon");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
  sim::parse_methods(encoding_methods);
  sim::parse_methods(prediction_methods);
  sim::parse_methods(sweep_methods);
}

sim::Environment ExperimentConfig::environment() const {
  plant::RenderConfig r = render;
  r.pole_half_length = plant.pole_half_length;
  return sim::make_environment(plant, weights, r);
}

void apply_setting(ExperimentConfig& cfg, std::string_view key,
                   std::string_view value) {
  for (const Field& f : fields()) {
    if (f.key == key) {
      f.set(cfg, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_assignment(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  apply_setting(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  std::set<std::string, std::less<>> seen;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string_view body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(number) + " lacks '='");
    const std::string key(trim(body.substr(0, eq)));
    if (!seen.insert(key).second)
      throw ConfigError("config key '" + key + "' appears twice");
    apply_setting(cfg, key, body.substr(eq + 1));
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  apply_config_text(cfg, text);
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const Field& f : fields()) out += f.key + " = " + f.get(cfg) + "\n";
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) keys.push_back(f.key);
  return keys;
}

}  // namespace hjepa::cli
