// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/model/training.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/nn/checkpoint.hpp"
#include "hjepa/nn/loss.hpp"
#include "hjepa/nn/optim.hpp"
#include "hjepa/random.hpp"

namespace hjepa::model {
namespace {

using Item = std::pair<int, int>;  // (trajectory, start step)

constexpr Eigen::Index kEmbedChunk = 512;

RandomStream stage_stream(std::uint64_t seed, StreamTag tag,
                          std::uint64_t detail = 0) {
  return make_stream(seed, {static_cast<std::uint64_t>(tag), detail});
}

// Start steps k <= max_start of training trajectories with
// k % stride == epoch % stride, shuffled.
std::vector<Item> epoch_items(const data::Dataset& ds, int max_start, int epoch,
                              int stride, RandomStream& rng) {
  std::vector<Item> items;
  for (int t = 0; t < ds.train_count; ++t)
    for (int k = epoch % stride; k <= max_start; k += stride) items.push_back({t, k});
  std::shuffle(items.begin(), items.end(), rng);
  return items;
}

std::vector<Item> shifted(std::span<const Item> items, int by) {
  std::vector<Item> out(items.begin(), items.end());
  for (Item& it : out) it.second += by;
  return out;
}

// Row i holds the logged actions u_{k+offset} .. u_{k+offset+count-1}.
nn::Matrix action_block(const data::Dataset& ds, std::span<const Item> items,
                        int offset, int count) {
  nn::Matrix a(static_cast<Eigen::Index>(items.size()), count);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const data::Trajectory& t = ds.trajectories[static_cast<std::size_t>(items[i].first)];
    for (int j = 0; j < count; ++j)
      a(static_cast<Eigen::Index>(i), j) = t.applied[items[i].second + offset + j];
  }
  return a;
}

nn::Matrix hconcat(std::initializer_list<const nn::Matrix*> parts) {
  Eigen::Index cols = 0;
  const Eigen::Index rows = (*parts.begin())->rows();
  for (const nn::Matrix* p : parts) cols += p->cols();
  nn::Matrix out(rows, cols);
  Eigen::Index c = 0;
  for (const nn::Matrix* p : parts) {
    out.middleCols(c, p->cols()) = *p;
    c += p->cols();
  }
  return out;
}

void require_finite_step(const nn::StepReport& r, double loss,
                         const std::string& stage, int epoch, int batch) {
  if (!r.applied || !std::isfinite(loss))
    throw DivergenceError(stage + ": non-finite loss or gradient at epoch " +
                          std::to_string(epoch) + ", batch " +
                          std::to_string(batch) + " (loss " +
                          format_real(loss) + ", grad norm " +
                          format_real(r.grad_norm) + ")");
}

void require_frames(const data::Dataset& ds, const char* what) {
  if (ds.type != data::RecordType::kStatePairs)
    throw DataError(std::string(what) + " needs a state-pairs dataset");
  if (ds.train_count == 0) throw DataError(std::string(what) + ": no training trajectories");
}

nn::SgdConfig stage_sgd(const TrainConfig& train, int epochs,
                        double learning_rate) {
  nn::SgdConfig s = train.sgd;
  s.epochs = epochs;
  s.learning_rate = learning_rate;
  return s;
}

template <typename Fn>
void for_each_batch(std::span<const Item> items, int batch_size, Fn&& fn) {
  for (std::size_t b = 0, index = 0; b < items.size();
       b += static_cast<std::size_t>(batch_size), ++index) {
    const std::size_t n = std::min(items.size() - b, static_cast<std::size_t>(batch_size));
    fn(items.subspan(b, n), static_cast<int>(index));
  }
}

}  // namespace

nn::FeatureStatistics fit_frame_statistics(const data::Dataset& frames, int kappa) {
  require_frames(frames, "frame statistics");
  std::vector<Item> all;
  for (int t = 0; t < frames.train_count; ++t)
    for (int k = 0; k < frames.length(); ++k) all.push_back({t, k});
  const Eigen::Index dim = static_cast<Eigen::Index>(frames.feature_dim) * kappa;
  // Two chunked passes: mean, then centred second moment.
  nn::Vector sum = nn::Vector::Zero(dim);
  const std::span<const Item> view(all);
  for (std::size_t b = 0; b < all.size(); b += kEmbedChunk) {
    const auto part = view.subspan(b, std::min<std::size_t>(kEmbedChunk, all.size() - b));
    sum += data::stacked_rows(frames, part, kappa).colwise().sum().transpose();
  }
  const double n = static_cast<double>(all.size());
  nn::FeatureStatistics stats;
  stats.shift = sum / n;
  nn::Vector sq = nn::Vector::Zero(dim);
  for (std::size_t b = 0; b < all.size(); b += kEmbedChunk) {
    const auto part = view.subspan(b, std::min<std::size_t>(kEmbedChunk, all.size() - b));
    const nn::Matrix rows = data::stacked_rows(frames, part, kappa);
    sq += (rows.rowwise() - stats.shift.transpose()).array().square().matrix()
              .colwise().sum().transpose();
  }
  stats.scale.resize(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double sd = std::sqrt(sq(c) / n);
    stats.scale(c) = sd >= 1e-6 ? 1.0 / sd : 0.0;
  }
  return stats;
}

nn::Matrix embed_steps(const nn::Mlp& encoder, const data::Dataset& frames,
                       int kappa, int first, int last) {
  std::vector<Item> all;
  for (int t = first; t < last; ++t)
    for (int k = 0; k < frames.length(); ++k) all.push_back({t, k});
  nn::Matrix out(static_cast<Eigen::Index>(all.size()), encoder.output_dim());
  const std::span<const Item> view(all);
  for (std::size_t b = 0; b < all.size(); b += kEmbedChunk) {
    const auto part = view.subspan(b, std::min<std::size_t>(kEmbedChunk, all.size() - b));
    out.middleRows(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(part.size())) =
        encoder.forward(data::stacked_rows(frames, part, kappa));
  }
  return out;
}

nn::Vector oracle_actions(const data::Dataset& ds, int first, int last) {
  nn::Vector y(static_cast<Eigen::Index>(last - first) * ds.length());
  Eigen::Index i = 0;
  for (int t = first; t < last; ++t)
    for (double u : ds.trajectories[static_cast<std::size_t>(t)].oracle) y(i++) = u;
  return y;
}

LatentStageResult train_latent_stage(const data::Dataset& frames,
                                     const HjepaConfig& cfg,
                                     const TrainConfig& train, int depth,
                                     std::uint64_t seed,
                                     const StepObserver& observer,
                                     int max_steps) {
  require_frames(frames, "latent stage");
  if (depth < 1 || depth >= frames.length())
    throw ConfigError("latent stage depth must lie in [1, trajectory length)");
  const int kappa = cfg.frame_stack;
  const std::string stage = "latent_d" + std::to_string(depth);
  RandomStream rng = stage_stream(seed, StreamTag::kLatentStage,
                                  static_cast<std::uint64_t>(depth));

  LatentStageResult r;
  r.context_encoder = make_encoder(frames.feature_dim * kappa, cfg);
  r.context_encoder.init_glorot(rng);
  const nn::FeatureStatistics stats = fit_frame_statistics(frames, kappa);
  r.context_encoder.set_input_statistics(stats.shift, stats.scale);
  r.predictor = make_high_predictor(cfg, depth);
  r.predictor.init_glorot(rng);
  r.target_encoder = r.context_encoder;  // identical at initialization

  const nn::SgdConfig sgd = stage_sgd(train, train.epochs_high, train.sgd.learning_rate);
  int step = 0;
  for (int epoch = 0; epoch < sgd.epochs; ++epoch) {
    const double lr = sgd.rate_at(epoch);
    const std::vector<Item> items =
        epoch_items(frames, frames.length() - 1 - depth, epoch, train.pair_stride, rng);
    double total = 0.0;
    int batches = 0;
    bool stop = false;
    for_each_batch(items, sgd.batch_size, [&](std::span<const Item> batch, int index) {
      if (stop) return;
      const nn::Matrix x_now = data::stacked_rows(frames, batch, kappa);
      const nn::Matrix x_next = data::stacked_rows(frames, shifted(batch, depth), kappa);
      const nn::Matrix actions = action_block(frames, batch, 0, depth);

      nn::Mlp::Cache enc_cache;
      const nn::Matrix z = r.context_encoder.forward(x_now, &enc_cache);
      nn::Mlp::Cache pred_cache;
      const nn::Matrix z_pred = r.predictor.forward(hconcat({&z, &actions}), &pred_cache);
      // Target branch: plain forward, never differentiated.
      const nn::Matrix z_target = r.target_encoder.forward(x_next);
      const nn::LossResult loss = nn::cosine_loss(z_pred, z_target);

      const nn::Mlp::Gradients gp = r.predictor.backward(pred_cache, loss.grad, true);
      const nn::Mlp::Gradients ge = r.context_encoder.backward(
          enc_cache, gp.input.leftCols(cfg.embed_dim), false);
      require_finite_step(nn::sgd_step(r.context_encoder.params(), ge.params, lr, sgd.clip_norm),
                          loss.value, stage, epoch, index);
      require_finite_step(nn::sgd_step(r.predictor.params(), gp.params, lr, sgd.clip_norm),
                          loss.value, stage, epoch, index);
      nn::ema_update(r.target_encoder.params(), r.context_encoder.params(), cfg.ema_rate);
      if (observer) observer(step, r.context_encoder.params(), r.target_encoder.params());
      ++step;
      total += loss.value;
      ++batches;
      if (max_steps > 0 && step >= max_steps) stop = true;
    });
    r.log.push_back({stage, epoch, batches ? total / batches : 0.0, lr, batches});
    if (stop) break;
  }
  return r;
}

BlockSamples rollout_block_inputs(const data::Dataset& emb, std::span<const Item> starts,
                                  const ModelBundle& chain, Level level,
                                  const nn::Mlp& current) {
  const HjepaConfig& cfg = chain.config;
  const LatentRolloutPlan plan =
      make_rollout_plan(cfg.depth_high, cfg.depth_high, cfg.depth_medium, cfg.depth_low);
  std::map<int, nn::Matrix> z;
  z[0] = data::feature_rows(emb, starts);
  std::vector<nn::Matrix> rows;
  BlockSamples out;
  for (const PlanStep& s : plan.steps) {
    if (static_cast<int>(s.level) > static_cast<int>(level)) continue;  // finer
    const nn::Matrix actions = action_block(emb, starts, s.from, plan.depth(s.level));
    const nn::Matrix input = s.bracket >= 0 ? hconcat({&z.at(s.from), &z.at(s.bracket), &actions})
                                            : hconcat({&z.at(s.from), &actions});
    const nn::Mlp& net = s.level == level        ? current
                         : s.level == Level::kHigh ? chain.predictor_high
                                                   : chain.predictor_medium;
    z[s.target] = net.forward(input);
    if (s.level != level) continue;
    rows.push_back(input);
    for (const Item& it : starts) out.targets.push_back({it.first, it.second + s.target});
  }
  const Eigen::Index width = rows.empty() ? 0 : rows.front().cols();
  out.inputs.resize(static_cast<Eigen::Index>(out.targets.size()), width);
  Eigen::Index r = 0;
  for (const nn::Matrix& m : rows) {
    out.inputs.middleRows(r, m.rows()) = m;
    r += m.rows();
  }
  return out;
}

PredictorStageResult train_bracket_stage(const data::Dataset& emb,
                                         const HjepaConfig& cfg,
                                         const TrainConfig& train, Level level,
                                         int upper, int depth,
                                         std::uint64_t seed,
                                         const ModelBundle* chain) {
  if (emb.type != data::RecordType::kEmbeddingPairs)
    throw DataError("predictor stage needs an embedding-pairs dataset");
  if (emb.feature_dim != cfg.embed_dim)
    throw ShapeError("embedding dataset width differs from hjepa.embed_dim");
  if (!(depth >= 1 && upper > depth && upper % depth == 0))
    throw ConfigError("bracket stage needs depth < upper with depth | upper");
  if (level == Level::kHigh) throw ConfigError("bracket stage trains medium or low");
  if (emb.train_count == 0) throw DataError("predictor stage: no training trajectories");
  if (chain && (chain->config.depth_high % upper != 0 ||
                (level == Level::kMedium ? chain->config.depth_medium
                                         : chain->config.depth_low) != depth))
    throw ConfigError("bracket stage depths differ from the chain's configuration");
  // Steps past a start that the samples read.
  const int reach = chain ? chain->config.depth_high : upper;
  if (emb.length() <= reach) throw DataError("predictor stage: trajectories too short");
  const std::string stage = level_name(level);
  RandomStream rng = stage_stream(
      seed, level == Level::kMedium ? StreamTag::kMediumStage : StreamTag::kLowStage);

  PredictorStageResult r;
  r.predictor = make_bracket_predictor(cfg, depth);
  r.predictor.init_glorot(rng);
  const int epochs = level == Level::kMedium ? train.epochs_medium : train.epochs_low;
  const nn::SgdConfig sgd = stage_sgd(train, epochs, train.sgd.learning_rate);
  // One SGD step on rows of [z_from || z_bracket || actions] against the
  // encoded targets.
  const auto step = [&](const nn::Matrix& input, std::span<const Item> targets, double lr,
                        int epoch, int batch) {
    const nn::Matrix z_target = data::feature_rows(emb, targets);
    nn::Mlp::Cache cache;
    const nn::Matrix z_pred = r.predictor.forward(input, &cache);
    const nn::LossResult loss = nn::cosine_loss(z_pred, z_target);
    const nn::Mlp::Gradients g = r.predictor.backward(cache, loss.grad, false);
    require_finite_step(nn::sgd_step(r.predictor.params(), g.params, lr, sgd.clip_norm),
                        loss.value, stage, epoch, batch);
    return loss.value;
  };
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const double lr = sgd.rate_at(epoch);
    const std::vector<Item> starts =
        epoch_items(emb, emb.length() - 1 - reach, epoch, train.pair_stride, rng);
    double total = 0.0;
    int batches = 0;
    if (chain && !starts.empty()) {
      // Every start yields one row per owned step of the block.
      const int per_start = static_cast<int>(
          rollout_block_inputs(emb, std::span<const Item>(starts).first(1), *chain, level,
                               r.predictor)
              .targets.size());
      const std::size_t batch_starts =
          static_cast<std::size_t>(std::max(1, sgd.batch_size / std::max(1, per_start)));
      for (std::size_t b = 0; b < starts.size(); b += batch_starts) {
        const auto part =
            std::span<const Item>(starts).subspan(b, std::min(batch_starts, starts.size() - b));
        const BlockSamples s = rollout_block_inputs(emb, part, *chain, level, r.predictor);
        total += step(s.inputs, s.targets, lr, epoch, batches);
        ++batches;
      }
    } else if (!chain) {
      // Expand interval starts into every owned position inside the interval.
      std::vector<std::pair<Item, int>> samples;  // (interval start, position p)
      for (const Item& s : starts)
        for (int p = 0; p + depth < upper; p += depth) samples.push_back({s, p});
      std::shuffle(samples.begin(), samples.end(), rng);
      std::vector<Item> from_items(samples.size());
      std::vector<Item> bracket_items(samples.size());
      std::vector<Item> target_items(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [s, p] = samples[i];
        from_items[i] = {s.first, s.second + p};
        bracket_items[i] = {s.first, s.second + upper};
        target_items[i] = {s.first, s.second + p + depth};
      }
      for (std::size_t b = 0; b < samples.size(); b += static_cast<std::size_t>(sgd.batch_size)) {
        const std::size_t n =
            std::min(samples.size() - b, static_cast<std::size_t>(sgd.batch_size));
        const auto from = std::span<const Item>(from_items).subspan(b, n);
        const nn::Matrix z_from = data::feature_rows(emb, from);
        const nn::Matrix z_bracket =
            data::feature_rows(emb, std::span<const Item>(bracket_items).subspan(b, n));
        const nn::Matrix actions = action_block(emb, from, 0, depth);
        total += step(hconcat({&z_from, &z_bracket, &actions}),
                      std::span<const Item>(target_items).subspan(b, n), lr, epoch, batches);
        ++batches;
      }
    }
    r.log.push_back({stage, epoch, batches ? total / batches : 0.0, lr, batches});
  }
  return r;
}

ActorStageResult train_actor(const nn::Matrix& embeddings,
                             const nn::Vector& targets, const HjepaConfig& cfg,
                             const TrainConfig& train, std::uint64_t seed) {
  if (embeddings.rows() != targets.size() || embeddings.rows() == 0)
    throw ShapeError("actor stage needs one target per embedding");
  RandomStream rng = stage_stream(seed, StreamTag::kActorStage);
  ActorStageResult r;
  r.actor = make_actor(cfg);
  r.actor.init_glorot(rng);
  const nn::FeatureStatistics stats =
      nn::fit_feature_statistics(nn::l2_normalize_rows(embeddings));
  r.actor.set_input_statistics(stats.shift, stats.scale);

  const nn::SgdConfig sgd = stage_sgd(train, train.epochs_actor, train.actor_learning_rate);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(embeddings.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  for (int epoch = 0; epoch < sgd.epochs; ++epoch) {
    const double lr = sgd.rate_at(epoch);
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    int batches = 0;
    for (std::size_t b = 0; b < order.size(); b += static_cast<std::size_t>(sgd.batch_size)) {
      const std::size_t n = std::min(order.size() - b, static_cast<std::size_t>(sgd.batch_size));
      const std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(b),
                                          order.begin() + static_cast<std::ptrdiff_t>(b + n));
      const nn::Matrix x = embeddings(idx, Eigen::all);
      const nn::Matrix y = targets(idx);
      nn::Mlp::Cache cache;
      const nn::Matrix out = r.actor.forward(x, &cache);
      const nn::LossResult loss = nn::mse_loss(out, y);
      const nn::Mlp::Gradients g = r.actor.backward(cache, loss.grad, false);
      require_finite_step(nn::sgd_step(r.actor.params(), g.params, lr, sgd.clip_norm),
                          loss.value, "actor", epoch, batches);
      total += loss.value;
      ++batches;
    }
    r.log.push_back({"actor", epoch, batches ? total / batches : 0.0, lr, batches});
  }
  return r;
}

SupervisedResult train_supervised(const data::Dataset& frames, int kappa,
                                  const HjepaConfig& cfg,
                                  const TrainConfig& train, std::uint64_t seed) {
  require_frames(frames, "supervised baseline");
  const std::string stage = "supervised_k" + std::to_string(kappa);
  RandomStream rng = stage_stream(seed, StreamTag::kSupervised,
                                  static_cast<std::uint64_t>(kappa));
  SupervisedResult r;
  r.net = make_supervised(cfg, frames.feature_dim * kappa);
  r.net.init_glorot(rng);
  const nn::FeatureStatistics stats = fit_frame_statistics(frames, kappa);
  r.net.set_input_statistics(stats.shift, stats.scale);
  const nn::SgdConfig sgd = stage_sgd(train, train.epochs_supervised, train.sgd.learning_rate);
  for (int epoch = 0; epoch < sgd.epochs; ++epoch) {
    const double lr = sgd.rate_at(epoch);
    const std::vector<Item> items =
        epoch_items(frames, frames.length() - 1, epoch, train.pair_stride, rng);
    double total = 0.0;
    int batches = 0;
    for_each_batch(items, sgd.batch_size, [&](std::span<const Item> batch, int index) {
      const nn::Matrix x = data::stacked_rows(frames, batch, kappa);
      nn::Matrix y(static_cast<Eigen::Index>(batch.size()), 1);
      for (std::size_t i = 0; i < batch.size(); ++i)
        y(static_cast<Eigen::Index>(i), 0) =
            frames.trajectories[static_cast<std::size_t>(batch[i].first)].oracle[batch[i].second];
      nn::Mlp::Cache cache;
      const nn::Matrix out = r.net.forward(x, &cache);
      const nn::LossResult loss = nn::mse_loss(out, y);
      const nn::Mlp::Gradients g = r.net.backward(cache, loss.grad, false);
      require_finite_step(nn::sgd_step(r.net.params(), g.params, lr, sgd.clip_norm),
                          loss.value, stage, epoch, index);
      total += loss.value;
      ++batches;
    });
    r.log.push_back({stage, epoch, batches ? total / batches : 0.0, lr, batches});
  }
  return r;
}

AutoencoderResult train_autoencoder(const data::Dataset& frames,
                                    const HjepaConfig& cfg,
                                    const TrainConfig& train,
                                    std::uint64_t seed) {
  require_frames(frames, "auto-encoder baseline");
  const int kappa = cfg.frame_stack;
  const int dim = frames.feature_dim * kappa;
  RandomStream rng = stage_stream(seed, StreamTag::kAutoencoder);
  AutoencoderResult r;
  AutoencoderModel& m = r.model;
  m.encoder = make_encoder(dim, cfg);
  m.encoder.init_glorot(rng);
  const nn::FeatureStatistics stats = fit_frame_statistics(frames, kappa);
  m.encoder.set_input_statistics(stats.shift, stats.scale);
  m.decoder = make_decoder(cfg, dim);
  m.decoder.init_glorot(rng);
  nn::SgdConfig sgd = stage_sgd(train, train.epochs_autoencoder, train.sgd.learning_rate);
  sgd.clip_norm = train.autoencoder_clip_norm;
  for (int epoch = 0; epoch < sgd.epochs; ++epoch) {
    const double lr = sgd.rate_at(epoch);
    const std::vector<Item> items =
        epoch_items(frames, frames.length() - 1, epoch, train.pair_stride, rng);
    double total = 0.0;
    int batches = 0;
    for_each_batch(items, sgd.batch_size, [&](std::span<const Item> batch, int index) {
      const nn::Matrix x = data::stacked_rows(frames, batch, kappa);
      nn::Mlp::Cache enc_cache;
      const nn::Matrix z = m.encoder.forward(x, &enc_cache);
      nn::Mlp::Cache dec_cache;
      const nn::Matrix recon = m.decoder.forward(z, &dec_cache);
      // Per-frame squared reconstruction error, averaged over the batch.
      nn::LossResult loss = nn::mse_loss(recon, x);
      loss.value *= dim;
      loss.grad *= dim;
      const nn::Mlp::Gradients gd = m.decoder.backward(dec_cache, loss.grad, true);
      const nn::Mlp::Gradients ge = m.encoder.backward(enc_cache, gd.input, false);
      require_finite_step(nn::sgd_step(m.encoder.params(), ge.params, lr, sgd.clip_norm),
                          loss.value, "autoencoder", epoch, index);
      require_finite_step(nn::sgd_step(m.decoder.params(), gd.params, lr, sgd.clip_norm),
                          loss.value, "autoencoder", epoch, index);
      total += loss.value;
      ++batches;
    });
    r.log.push_back({"autoencoder", epoch, batches ? total / batches : 0.0, lr, batches});
  }
  // The actor sees the encoder as a checkpoint reload would.
  nn::round_to_f32(m.encoder);
  const nn::Matrix z = embed_steps(m.encoder, frames, kappa, 0, frames.train_count);
  ActorStageResult actor =
      train_actor(z, oracle_actions(frames, 0, frames.train_count), cfg, train, seed + 1);
  m.actor = std::move(actor.actor);
  for (EpochLog& e : actor.log) {
    e.stage = "autoencoder_actor";
    r.log.push_back(e);
  }
  return r;
}

HjepaTrainingResult train_hjepa(const LatentStageResult& stage1,
                                const data::Dataset& frames,
                                const data::Dataset& medium,
                                const data::Dataset& low,
                                const HjepaConfig& cfg,
                                const TrainConfig& train, std::uint64_t seed) {
  cfg.validate();
  HjepaTrainingResult r;
  ModelBundle& b = r.bundle;
  b.config = cfg;
  b.context_encoder = stage1.context_encoder;
  b.target_encoder = stage1.target_encoder;
  b.predictor_high = stage1.predictor;
  r.log = stage1.log;
  // With predicted brackets each level trains on the rollout of the levels
  // above it, so the medium level must be finished before the low one.
  const ModelBundle* chain = train.predicted_brackets ? &b : nullptr;
  PredictorStageResult m = train_bracket_stage(medium, cfg, train, Level::kMedium,
                                               cfg.depth_high, cfg.depth_medium, seed, chain);
  b.predictor_medium = std::move(m.predictor);
  r.log.insert(r.log.end(), m.log.begin(), m.log.end());
  PredictorStageResult l = train_bracket_stage(low, cfg, train, Level::kLow,
                                               cfg.depth_medium, cfg.depth_low, seed, chain);
  b.predictor_low = std::move(l.predictor);
  r.log.insert(r.log.end(), l.log.begin(), l.log.end());
  ActorStageResult a = train_actor(
      embed_steps(b.context_encoder, frames, cfg.frame_stack, 0, frames.train_count),
      oracle_actions(frames, 0, frames.train_count), cfg, train, seed);
  b.actor = std::move(a.actor);
  r.log.insert(r.log.end(), a.log.begin(), a.log.end());
  return r;
}

}  // namespace hjepa::model
