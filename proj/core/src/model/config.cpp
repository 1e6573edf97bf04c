// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/model/config.hpp"

#include <string>

#include "hjepa/error.hpp"

namespace hjepa::model {

void HjepaConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(embed_dim > 0, "hjepa.embed_dim must be > 0");
  require(frame_stack >= 1, "hjepa.frame_stack must be >= 1");
  require(horizon >= 1, "hjepa.horizon must be >= 1");
  require(depth_low >= 1, "hjepa.depth_l must be >= 1");
  require(depth_low < depth_medium && depth_medium < depth_high,
          "hjepa depths must satisfy depth_l < depth_m < depth_h, got " +
              std::to_string(depth_low) + ", " + std::to_string(depth_medium) +
              ", " + std::to_string(depth_high));
  require(depth_high <= horizon, "hjepa.depth_h must not exceed hjepa.horizon");
  require(horizon % depth_high == 0,
          "hjepa.horizon (" + std::to_string(horizon) +
              ") must be divisible by hjepa.depth_h (" +
              std::to_string(depth_high) + ")");
  require(depth_high % depth_medium == 0,
          "hjepa.depth_h must be divisible by hjepa.depth_m");
  require(depth_medium % depth_low == 0,
          "hjepa.depth_m must be divisible by hjepa.depth_l");
  require(ema_rate >= 0.0 && ema_rate <= 1.0, "hjepa.ema_rate must lie in [0, 1]");
  require(!encoder_widths.empty(), "hjepa.encoder_widths must not be empty");
  for (int w : encoder_widths) require(w > 0, "hjepa.encoder_widths must be > 0");
  require(predictor_hidden > 0, "hjepa.predictor_hidden must be > 0");
  require(actor_hidden > 0, "hjepa.actor_hidden must be > 0");
}

void TrainConfig::validate() const {
  sgd.validate();
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(epochs_high >= 0 && epochs_medium >= 0 && epochs_low >= 0 &&
              epochs_actor >= 0 && epochs_supervised >= 0 &&
              epochs_autoencoder >= 0,
          "train epochs must be >= 0");
  require(actor_learning_rate > 0, "train.actor_lr must be > 0");
  require(autoencoder_clip_norm >= 0, "train.autoencoder_clip_norm must be >= 0");
  require(pair_stride >= 1, "train.pair_stride must be >= 1");
}

}  // namespace hjepa::model
