// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hjepa/dataset.hpp"
#include "hjepa/model/config.hpp"
#include "hjepa/model/networks.hpp"

namespace hjepa::model {

struct EpochLog {
  std::string stage;
  int epoch = 0;
  double loss = 0.0;           // mean batch loss over the epoch
  double learning_rate = 0.0;
  int batches = 0;
};

// Called after every optimizer step of the joint encoder/predictor stage
// with the online encoder parameters (after the step) and the target
// encoder parameters (after its EMA update).
using StepObserver = std::function<void(int step, const nn::ParamSet& online,
                                        const nn::ParamSet& target)>;

struct LatentStageResult {
  nn::Mlp context_encoder;
  nn::Mlp target_encoder;
  nn::Mlp predictor;
  std::vector<EpochLog> log;
};

// Jointly trains the context encoder and a depth-`depth` predictor on
// one-hop pairs (x_k, u_k..u_{k+depth-1}, x_{k+depth}) of a state-pairs
// dataset, minimizing the cosine loss to target-encoder embeddings under
// stop-gradient, with an EMA target update after every step. The target
// encoder starts as an exact copy of the context encoder. `max_steps` > 0
// truncates training after that many optimizer steps.
LatentStageResult train_latent_stage(const data::Dataset& frames,
                                     const HjepaConfig& cfg,
                                     const TrainConfig& train, int depth,
                                     std::uint64_t seed,
                                     const StepObserver& observer = {},
                                     int max_steps = 0);

// Inputs the `level` predictor receives in the first high-level block of a
// rollout anchored at the encoded embedding of each start, with logged
// actions. Coarser levels run the predictors in `chain`; earlier steps of
// `level` itself run `current`. Rows are step-major, start-minor.
struct BlockSamples {
  nn::Matrix inputs;
  std::vector<std::pair<int, int>> targets;  // (trajectory, step) per row
};
BlockSamples rollout_block_inputs(const data::Dataset& embeddings,
                                  std::span<const std::pair<int, int>> starts,
                                  const ModelBundle& chain, Level level,
                                  const nn::Mlp& current);

// Trains a medium or low predictor on an embedding-pairs dataset. Without a
// chain, every interval start k gives targets at k + p + depth (p = 0,
// depth, ... inside the interval) conditioned on the encoded
// [z_{k+p} || z_{k+upper} || actions]. With a chain (high, and medium when
// training low), inputs are those of rollout_block_inputs instead, so the
// predictor trains on what it sees at inference.
struct PredictorStageResult {
  nn::Mlp predictor;
  std::vector<EpochLog> log;
};
PredictorStageResult train_bracket_stage(const data::Dataset& embeddings,
                                         const HjepaConfig& cfg,
                                         const TrainConfig& train, Level level,
                                         int upper_depth, int depth,
                                         std::uint64_t seed,
                                         const ModelBundle* chain = nullptr);

// Squared-error regression of oracle actions on fixed embeddings.
struct ActorStageResult {
  nn::Mlp actor;
  std::vector<EpochLog> log;
};
ActorStageResult train_actor(const nn::Matrix& embeddings,
                             const nn::Vector& oracle_actions,
                             const HjepaConfig& cfg, const TrainConfig& train,
                             std::uint64_t seed);

// Direct kappa-frame -> oracle action regression.
struct SupervisedResult {
  nn::Mlp net;
  std::vector<EpochLog> log;
};
SupervisedResult train_supervised(const data::Dataset& frames, int kappa,
                                  const HjepaConfig& cfg,
                                  const TrainConfig& train, std::uint64_t seed);

// Encoder + mirrored decoder on pixel squared error, then an actor on the
// encoder's embeddings.
struct AutoencoderResult {
  AutoencoderModel model;
  std::vector<EpochLog> log;
};
AutoencoderResult train_autoencoder(const data::Dataset& frames,
                                    const HjepaConfig& cfg,
                                    const TrainConfig& train,
                                    std::uint64_t seed);

// Embeddings of every step of trajectories [first, last) with the given
// encoder, in (trajectory, step) order.
nn::Matrix embed_steps(const nn::Mlp& encoder, const data::Dataset& frames,
                       int kappa, int first, int last);

// Oracle actions of trajectories [first, last) in (trajectory, step) order.
nn::Vector oracle_actions(const data::Dataset& ds, int first, int last);

// Fitted per-feature statistics of the stacked training observations.
nn::FeatureStatistics fit_frame_statistics(const data::Dataset& frames, int kappa);

// Full three-level pipeline from an already trained latent stage.
struct HjepaTrainingResult {
  ModelBundle bundle;
  std::vector<EpochLog> log;
};
HjepaTrainingResult train_hjepa(const LatentStageResult& stage1,
                                const data::Dataset& frames,
                                const data::Dataset& medium,
                                const data::Dataset& low,
                                const HjepaConfig& cfg,
                                const TrainConfig& train, std::uint64_t seed);

// Training-stream tags, so every stage draws from an independent stream.
enum class StreamTag : std::uint64_t {
  kLatentStage = 101,
  kMediumStage = 102,
  kLowStage = 103,
  kActorStage = 104,
  kSupervised = 105,
  kAutoencoder = 106,
};

}  // namespace hjepa::model
