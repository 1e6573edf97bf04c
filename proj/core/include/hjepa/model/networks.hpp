// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "hjepa/model/config.hpp"
#include "hjepa/model/rollout.hpp"
#include "hjepa/nn/mlp.hpp"
#include "hjepa/plant.hpp"

namespace hjepa::model {

// Frozen input standardization, ReLU layers of encoder_widths, then a
// residual linear projection to embed_dim.
nn::Mlp make_encoder(int input_dim, const HjepaConfig& cfg);
// z + MLP([z || depth actions]) with one ReLU hidden layer.
nn::Mlp make_high_predictor(const HjepaConfig& cfg, int depth);
// z_from + MLP([z_from || z_bracket || depth actions]).
nn::Mlp make_bracket_predictor(const HjepaConfig& cfg, int depth);
// L2-normalized, standardized embedding -> actor_hidden (ReLU) -> force.
nn::Mlp make_actor(const HjepaConfig& cfg);
// Mirror of the encoder trunk: embed_dim -> reversed widths -> output_dim.
nn::Mlp make_decoder(const HjepaConfig& cfg, int output_dim);
// Standardized stacked frames -> encoder widths -> actor_hidden -> force.
nn::Mlp make_supervised(const HjepaConfig& cfg, int input_dim);

// Parameter sets of the three-level model.
struct ModelBundle {
  HjepaConfig config;
  nn::Mlp context_encoder;   // theta
  nn::Mlp target_encoder;    // theta-bar
  nn::Mlp predictor_high;    // phi_H
  nn::Mlp predictor_medium;  // phi_M
  nn::Mlp predictor_low;     // phi_L
  nn::Mlp actor;

  LatentRolloutPlan plan() const;
};

// Single-level JEPA with one predictor of stride `depth`.
struct SingleLevelModel {
  int depth = 1;
  nn::Mlp context_encoder;
  nn::Mlp target_encoder;
  nn::Mlp predictor;
  nn::Mlp actor;
};

// Auto-encoder baseline: encoder + mirrored decoder + actor on its latents.
struct AutoencoderModel {
  nn::Mlp encoder;
  nn::Mlp decoder;
  nn::Mlp actor;
};

// Embedding of one stacked observation.
nn::Vector encode(const nn::Mlp& encoder, std::span<const float> stacked);

// Semantic actor: force for embedding z, saturated to the plant limits.
double semantic_actor(const nn::Mlp& actor, const nn::Vector& z,
                      const plant::PlantParams& params);

// Saturated force straight from a stacked observation.
double supervised_action(const nn::Mlp& net, std::span<const float> stacked,
                         const plant::PlantParams& params);

// One checkpoint per component in `dir` plus a plain-text index naming the
// files and the configuration.
void save_bundle(const std::filesystem::path& dir, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& dir);
void save_single_level(const std::filesystem::path& dir,
                       const SingleLevelModel& model);
SingleLevelModel load_single_level(const std::filesystem::path& dir);
void save_autoencoder(const std::filesystem::path& dir,
                      const AutoencoderModel& model);
AutoencoderModel load_autoencoder(const std::filesystem::path& dir);

}  // namespace hjepa::model
