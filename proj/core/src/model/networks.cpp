// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/model/networks.hpp"

#include <map>
#include <sstream>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/io/binary.hpp"
#include "hjepa/nn/checkpoint.hpp"

namespace hjepa::model {
namespace {

using nn::Activation;
using nn::LayerSpec;

std::vector<LayerSpec> relu_chain(int in, const std::vector<int>& widths) {
  std::vector<LayerSpec> layers;
  for (int w : widths) {
    layers.push_back({in, w, Activation::kRelu, false});
    in = w;
  }
  return layers;
}

constexpr char kIndexFile[] = "index.txt";

std::string join_widths(const std::vector<int>& widths) {
  std::string out;
  for (std::size_t i = 0; i < widths.size(); ++i)
    out += (i ? "," : "") + std::to_string(widths[i]);
  return out;
}

void write_config(std::ostringstream& out, const HjepaConfig& c) {
  out << "hjepa.embed_dim = " << c.embed_dim << "\n"
      << "hjepa.frame_stack = " << c.frame_stack << "\n"
      << "hjepa.horizon = " << c.horizon << "\n"
      << "hjepa.depth_h = " << c.depth_high << "\n"
      << "hjepa.depth_m = " << c.depth_medium << "\n"
      << "hjepa.depth_l = " << c.depth_low << "\n"
      << "hjepa.ema_rate = " << format_real(c.ema_rate) << "\n"
      << "hjepa.encoder_widths = " << join_widths(c.encoder_widths) << "\n"
      << "hjepa.predictor_hidden = " << c.predictor_hidden << "\n"
      << "hjepa.actor_hidden = " << c.actor_hidden << "\n";
}

HjepaConfig read_config(const std::map<std::string, std::string>& kv);

std::map<std::string, std::string> read_index(const std::filesystem::path& dir) {
  const io::Bytes raw = io::read_file(dir / kIndexFile);
  std::istringstream in(std::string(raw.begin(), raw.end()));
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv,
                        const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw DataError("model index lacks '" + key + "'");
  return it->second;
}

}  // namespace

nn::Mlp make_encoder(int input_dim, const HjepaConfig& cfg) {
  std::vector<LayerSpec> layers = relu_chain(input_dim, cfg.encoder_widths);
  const int last = cfg.encoder_widths.back();
  layers.push_back({last, cfg.embed_dim, Activation::kIdentity,
                    last == cfg.embed_dim});
  return nn::Mlp(layers, {false, true});
}

nn::Mlp make_high_predictor(const HjepaConfig& cfg, int depth) {
  return nn::Mlp({{cfg.embed_dim + depth, cfg.predictor_hidden, Activation::kRelu, false},
                  {cfg.predictor_hidden, cfg.embed_dim, Activation::kIdentity, false}},
                 {}, true);
}

nn::Mlp make_bracket_predictor(const HjepaConfig& cfg, int depth) {
  return nn::Mlp(
      {{2 * cfg.embed_dim + depth, cfg.predictor_hidden, Activation::kRelu, false},
       {cfg.predictor_hidden, cfg.embed_dim, Activation::kIdentity, false}},
      {}, true);
}

nn::Mlp make_actor(const HjepaConfig& cfg) {
  return nn::Mlp({{cfg.embed_dim, cfg.actor_hidden, Activation::kRelu, false},
                  {cfg.actor_hidden, 1, Activation::kIdentity, false}},
                 {true, true});
}

nn::Mlp make_decoder(const HjepaConfig& cfg, int output_dim) {
  std::vector<int> widths(cfg.encoder_widths.rbegin(), cfg.encoder_widths.rend());
  // The encoder's last hidden width equals the latent side; skip it.
  if (!widths.empty() && widths.front() == cfg.embed_dim) widths.erase(widths.begin());
  std::vector<LayerSpec> layers = relu_chain(cfg.embed_dim, widths);
  const int last = widths.empty() ? cfg.embed_dim : widths.back();
  layers.push_back({last, output_dim, Activation::kIdentity, false});
  return nn::Mlp(layers);
}

nn::Mlp make_supervised(const HjepaConfig& cfg, int input_dim) {
  std::vector<int> widths = cfg.encoder_widths;
  widths.push_back(cfg.actor_hidden);
  std::vector<LayerSpec> layers = relu_chain(input_dim, widths);
  layers.push_back({cfg.actor_hidden, 1, Activation::kIdentity, false});
  return nn::Mlp(layers, {false, true});
}

LatentRolloutPlan ModelBundle::plan() const {
  return make_rollout_plan(config.horizon, config.depth_high,
                           config.depth_medium, config.depth_low);
}

nn::Vector encode(const nn::Mlp& encoder, std::span<const float> stacked) {
  nn::Matrix row(1, static_cast<Eigen::Index>(stacked.size()));
  for (std::size_t i = 0; i < stacked.size(); ++i)
    row(0, static_cast<Eigen::Index>(i)) = stacked[i];
  return encoder.forward(row).row(0).transpose();
}

double semantic_actor(const nn::Mlp& actor, const nn::Vector& z,
                      const plant::PlantParams& params) {
  const double raw = actor.forward(z.transpose())(0, 0);
  return plant::clamp_action(raw, params).force;
}

double supervised_action(const nn::Mlp& net, std::span<const float> stacked,
                         const plant::PlantParams& params) {
  nn::Matrix row(1, static_cast<Eigen::Index>(stacked.size()));
  for (std::size_t i = 0; i < stacked.size(); ++i)
    row(0, static_cast<Eigen::Index>(i)) = stacked[i];
  return plant::clamp_action(net.forward(row)(0, 0), params).force;
}

void save_bundle(const std::filesystem::path& dir, const ModelBundle& b) {
  using nn::ModelKind;
  nn::save_checkpoint(dir / "context_encoder.hjpc", b.context_encoder, ModelKind::kContextEncoder);
  nn::save_checkpoint(dir / "target_encoder.hjpc", b.target_encoder, ModelKind::kTargetEncoder);
  nn::save_checkpoint(dir / "predictor_high.hjpc", b.predictor_high, ModelKind::kPredictorHigh);
  nn::save_checkpoint(dir / "predictor_medium.hjpc", b.predictor_medium, ModelKind::kPredictorMedium);
  nn::save_checkpoint(dir / "predictor_low.hjpc", b.predictor_low, ModelKind::kPredictorLow);
  nn::save_checkpoint(dir / "actor.hjpc", b.actor, ModelKind::kActor);
  std::ostringstream out;
  out << "# hjepa model bundle\n"
      << "model = hjepa\n"
      << "context_encoder = context_encoder.hjpc\n"
      << "target_encoder = target_encoder.hjpc\n"
      << "predictor_high = predictor_high.hjpc\n"
      << "predictor_medium = predictor_medium.hjpc\n"
      << "predictor_low = predictor_low.hjpc\n"
      << "actor = actor.hjpc\n";
  write_config(out, b.config);
  io::write_text_file(dir / kIndexFile, out.str());
}

ModelBundle load_bundle(const std::filesystem::path& dir) {
  using nn::ModelKind;
  const auto kv = read_index(dir);
  if (need(kv, "model") != "hjepa")
    throw DataError("'" + dir.string() + "' does not hold an hjepa bundle");
  ModelBundle b;
  b.config = read_config(kv);
  b.context_encoder = nn::load_checkpoint(dir / need(kv, "context_encoder"), ModelKind::kContextEncoder);
  b.target_encoder = nn::load_checkpoint(dir / need(kv, "target_encoder"), ModelKind::kTargetEncoder);
  b.predictor_high = nn::load_checkpoint(dir / need(kv, "predictor_high"), ModelKind::kPredictorHigh);
  b.predictor_medium = nn::load_checkpoint(dir / need(kv, "predictor_medium"), ModelKind::kPredictorMedium);
  b.predictor_low = nn::load_checkpoint(dir / need(kv, "predictor_low"), ModelKind::kPredictorLow);
  b.actor = nn::load_checkpoint(dir / need(kv, "actor"), ModelKind::kActor);
  return b;
}

void save_single_level(const std::filesystem::path& dir,
                       const SingleLevelModel& m) {
  using nn::ModelKind;
  nn::save_checkpoint(dir / "context_encoder.hjpc", m.context_encoder, ModelKind::kContextEncoder);
  nn::save_checkpoint(dir / "target_encoder.hjpc", m.target_encoder, ModelKind::kTargetEncoder);
  nn::save_checkpoint(dir / "predictor.hjpc", m.predictor, ModelKind::kPredictorHigh);
  nn::save_checkpoint(dir / "actor.hjpc", m.actor, ModelKind::kActor);
  std::ostringstream out;
  out << "# single-level jepa\n"
      << "model = jepa\n"
      << "depth = " << m.depth << "\n"
      << "context_encoder = context_encoder.hjpc\n"
      << "target_encoder = target_encoder.hjpc\n"
      << "predictor = predictor.hjpc\n"
      << "actor = actor.hjpc\n";
  io::write_text_file(dir / kIndexFile, out.str());
}

SingleLevelModel load_single_level(const std::filesystem::path& dir) {
  using nn::ModelKind;
  const auto kv = read_index(dir);
  if (need(kv, "model") != "jepa")
    throw DataError("'" + dir.string() + "' does not hold a single-level model");
  SingleLevelModel m;
  m.depth = static_cast<int>(parse_int(need(kv, "depth"), "depth"));
  m.context_encoder = nn::load_checkpoint(dir / need(kv, "context_encoder"), ModelKind::kContextEncoder);
  m.target_encoder = nn::load_checkpoint(dir / need(kv, "target_encoder"), ModelKind::kTargetEncoder);
  m.predictor = nn::load_checkpoint(dir / need(kv, "predictor"), ModelKind::kPredictorHigh);
  m.actor = nn::load_checkpoint(dir / need(kv, "actor"), ModelKind::kActor);
  return m;
}

void save_autoencoder(const std::filesystem::path& dir,
                      const AutoencoderModel& m) {
  using nn::ModelKind;
  nn::save_checkpoint(dir / "encoder.hjpc", m.encoder, ModelKind::kContextEncoder);
  nn::save_checkpoint(dir / "decoder.hjpc", m.decoder, ModelKind::kDecoder);
  nn::save_checkpoint(dir / "actor.hjpc", m.actor, ModelKind::kActor);
  io::write_text_file(dir / kIndexFile,
                      "# auto-encoder baseline\nmodel = autoencoder\n"
                      "encoder = encoder.hjpc\ndecoder = decoder.hjpc\n"
                      "actor = actor.hjpc\n");
}

AutoencoderModel load_autoencoder(const std::filesystem::path& dir) {
  using nn::ModelKind;
  const auto kv = read_index(dir);
  if (need(kv, "model") != "autoencoder")
    throw DataError("'" + dir.string() + "' does not hold an auto-encoder");
  AutoencoderModel m;
  m.encoder = nn::load_checkpoint(dir / need(kv, "encoder"), ModelKind::kContextEncoder);
  m.decoder = nn::load_checkpoint(dir / need(kv, "decoder"), ModelKind::kDecoder);
  m.actor = nn::load_checkpoint(dir / need(kv, "actor"), ModelKind::kActor);
  return m;
}

namespace {

HjepaConfig read_config(const std::map<std::string, std::string>& kv) {
  HjepaConfig c;
  auto get_int = [&](const char* key) {
    return static_cast<int>(parse_int(need(kv, key), key));
  };
  c.embed_dim = get_int("hjepa.embed_dim");
  c.frame_stack = get_int("hjepa.frame_stack");
  c.horizon = get_int("hjepa.horizon");
  c.depth_high = get_int("hjepa.depth_h");
  c.depth_medium = get_int("hjepa.depth_m");
  c.depth_low = get_int("hjepa.depth_l");
  c.ema_rate = parse_real(need(kv, "hjepa.ema_rate"), "hjepa.ema_rate");
  c.encoder_widths.clear();
  for (const std::string& w : split_list(need(kv, "hjepa.encoder_widths")))
    c.encoder_widths.push_back(static_cast<int>(parse_int(w, "hjepa.encoder_widths")));
  c.predictor_hidden = get_int("hjepa.predictor_hidden");
  c.actor_hidden = get_int("hjepa.actor_hidden");
  c.validate();
  return c;
}

}  // namespace

}  // namespace hjepa::model
