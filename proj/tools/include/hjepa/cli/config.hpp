// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hjepa/model/config.hpp"
#include "hjepa/plant.hpp"
#include "hjepa/render.hpp"
#include "hjepa/sim/environment.hpp"
#include "hjepa/sim/generate.hpp"
#include "hjepa/sim/sweep.hpp"

namespace hjepa::cli {

// Every tunable of the pipeline under a flat dotted key.
struct ExperimentConfig {
  plant::PlantParams plant;
  plant::LqrWeights weights;
  plant::RenderConfig render;
  model::HjepaConfig hjepa;
  model::TrainConfig train;
  std::vector<int> jepa_depths = {1, 4};
  std::vector<int> supervised_stacks = {2, 4};
  bool train_autoencoder = true;
  sim::GenerationConfig generation;
  sim::SweepConfig sweep;
  std::string encoding_methods =
      "oracle,zero,repeat,hjepa,jepa1,jepa4,supervised2,supervised4,autoencoder";
  std::string prediction_methods = "zero,repeat,hjepa,jepa1,jepa4";
  std::string sweep_methods = "hjepa,jepa1,repeat,supervised2";
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  // Throws ConfigError naming the offending key.
  void validate() const;
  sim::Environment environment() const;
};

// Applies one `key = value` setting; unknown keys are a ConfigError.
void apply_setting(ExperimentConfig& cfg, std::string_view key,
                   std::string_view value);
// Parses "key=value" (as given to --set).
void apply_assignment(ExperimentConfig& cfg, std::string_view assignment);

// Applies a config file body on top of cfg: one `key = value` per line,
// `#` starts a comment, blank lines are ignored.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
ExperimentConfig parse_config(std::string_view text);

// Every key in a fixed order; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& cfg);
std::vector<std::string> config_keys();

}  // namespace hjepa::cli
