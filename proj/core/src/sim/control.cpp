// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hjepa/channel.hpp"
#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/model/rollout.hpp"

namespace hjepa::sim {
namespace {

constexpr std::uint64_t kNoiseTag = 0x6e6f697365ull;

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

int suffix_int(const std::string& name, std::size_t prefix_len) {
  const std::string tail = name.substr(prefix_len);
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), ::isdigit))
    throw ConfigError("unknown method '" + name + "'");
  const int v = static_cast<int>(parse_int(tail, name));
  if (v < 1) throw ConfigError("method '" + name + "' needs a positive suffix");
  return v;
}

const model::ModelBundle& need_hjepa(const ModelZoo& zoo, const Method& m) {
  if (!zoo.hjepa) throw ConfigError("method '" + m.name + "' needs the H-JEPA model");
  return *zoo.hjepa;
}

class OracleController final : public Controller {
 public:
  explicit OracleController(const Environment& env) : env_(env) {}
  double act(const StepContext& ctx) override {
    return plant::oracle_policy(*ctx.state, env_.lqr.gain, env_.plant).force;
  }

 private:
  const Environment& env_;
};

class ZeroController final : public Controller {
 public:
  double act(const StepContext&) override { return 0.0; }
};

// Computes an action from each delivered update and holds it otherwise.
class HoldController final : public Controller {
 public:
  using Policy = std::function<double(const std::vector<float>&)>;
  explicit HoldController(Policy policy) : policy_(std::move(policy)) {}
  double act(const StepContext& ctx) override {
    if (ctx.received) last_ = policy_(*ctx.received);
    return last_;
  }

 private:
  Policy policy_;
  double last_ = 0.0;  // before the first delivery
};

// Bridges outages with a latent rollout anchored at the last delivered
// embedding. Actions inside a predicted block are the actor's output on the
// embedding the block starts from.
class RolloutController final : public Controller {
 public:
  RolloutController(const nn::Mlp& encoder, const nn::Mlp& actor,
                    const Environment& env, const model::ModelBundle* bundle,
                    const model::SingleLevelModel* single)
      : encoder_(encoder), actor_(actor), env_(env), bundle_(bundle), single_(single) {}

  double act(const StepContext& ctx) override {
    if (ctx.received) {
      anchor_ = ctx.step;
      nn::Vector z = model::encode(encoder_, *ctx.received);
      const double u = model::semantic_actor(actor_, z, env_.plant);
      model::ActionSource source = [this](int, const nn::Vector& z_from) {
        return model::semantic_actor(actor_, z_from, env_.plant);
      };
      if (bundle_) {
        hierarchical_.emplace(bundle_->plan(), bundle_->predictor_high,
                              &bundle_->predictor_medium, &bundle_->predictor_low,
                              std::move(z), std::move(source));
      } else {
        single_level_.emplace(single_->depth, single_->predictor, std::move(z),
                              std::move(source));
      }
      return u;
    }
    if (anchor_ < 0) return 0.0;
    const int offset = ctx.step - anchor_;
    const nn::Vector& z = hierarchical_ ? hierarchical_->latest(offset)
                                        : single_level_->latest(offset);
    return model::semantic_actor(actor_, z, env_.plant);
  }

 private:
  const nn::Mlp& encoder_;
  const nn::Mlp& actor_;
  const Environment& env_;
  const model::ModelBundle* bundle_;
  const model::SingleLevelModel* single_;
  int anchor_ = -1;
  std::optional<model::HierarchicalRollout> hierarchical_;
  std::optional<model::SingleLevelRollout> single_level_;
};

}  // namespace

Method parse_method(const std::string& raw) {
  const std::string name(trim(raw));
  if (name == "oracle") return {name, MethodKind::kOracle, 0};
  if (name == "zero") return {name, MethodKind::kZero, 0};
  if (name == "repeat") return {name, MethodKind::kRepeat, 0};
  if (name == "hjepa") return {name, MethodKind::kHjepa, 0};
  if (name == "autoencoder") return {name, MethodKind::kAutoencoder, 0};
  if (starts_with(name, "jepa")) return {name, MethodKind::kJepa, suffix_int(name, 4)};
  if (starts_with(name, "supervised"))
    return {name, MethodKind::kSupervised, suffix_int(name, 10)};
  throw ConfigError("unknown method '" + name + "'");
}

std::vector<Method> parse_methods(const std::string& comma_list) {
  std::vector<Method> out;
  for (const std::string& item : split_list(comma_list)) {
    Method m = parse_method(item);
    for (const Method& seen : out)
      if (seen.name == m.name) throw ConfigError("method '" + m.name + "' listed twice");
    out.push_back(std::move(m));
  }
  if (out.empty()) throw ConfigError("method list is empty");
  return out;
}

bool transmits_frames(const Method& method) {
  return method.kind == MethodKind::kSupervised ||
         method.kind == MethodKind::kAutoencoder ||
         method.kind == MethodKind::kOracle;
}

int frames_per_update(const Method& method, const ModelZoo& zoo,
                      const Environment& env) {
  const auto stack_of = [&](const nn::Mlp& encoder) {
    return encoder.input_dim() / static_cast<int>(env.render.frame_size());
  };
  switch (method.kind) {
    case MethodKind::kZero:
      return 0;
    case MethodKind::kSupervised:
      return method.param;
    case MethodKind::kOracle:
      return zoo.hjepa ? zoo.hjepa->config.frame_stack : 2;
    case MethodKind::kRepeat:
    case MethodKind::kHjepa:
      return stack_of(need_hjepa(zoo, method).context_encoder);
    case MethodKind::kAutoencoder:
      if (!zoo.autoencoder)
        throw ConfigError("method 'autoencoder' needs a trained auto-encoder");
      return stack_of(zoo.autoencoder->encoder);
    case MethodKind::kJepa:
      break;
  }
  auto it = zoo.jepa.find(method.param);
  if (it == zoo.jepa.end())
    throw ConfigError("method '" + method.name + "' needs a trained depth-" +
                      std::to_string(method.param) + " JEPA");
  return stack_of(it->second.context_encoder);
}

double payload_bits(const Method& method, const ModelZoo& zoo,
                    const Environment& env, int embedding_bits) {
  if (method.kind == MethodKind::kZero) return 0.0;
  if (transmits_frames(method))
    return channel::frame_payload_bits(env.render.width, env.render.height,
                                       env.render.channels,
                                       frames_per_update(method, zoo, env));
  const int d_z = zoo.hjepa ? zoo.hjepa->config.embed_dim
                  : !zoo.jepa.empty()
                      ? zoo.jepa.begin()->second.context_encoder.output_dim()
                      : 256;
  return channel::embedding_payload_bits(d_z, embedding_bits);
}

std::unique_ptr<Controller> make_controller(const Method& method,
                                            const ModelZoo& zoo,
                                            const Environment& env) {
  switch (method.kind) {
    case MethodKind::kOracle:
      return std::make_unique<OracleController>(env);
    case MethodKind::kZero:
      return std::make_unique<ZeroController>();
    case MethodKind::kRepeat: {
      const model::ModelBundle& b = need_hjepa(zoo, method);
      return std::make_unique<HoldController>([&b, &env](const std::vector<float>& x) {
        return model::semantic_actor(b.actor, model::encode(b.context_encoder, x), env.plant);
      });
    }
    case MethodKind::kHjepa: {
      const model::ModelBundle& b = need_hjepa(zoo, method);
      return std::make_unique<RolloutController>(b.context_encoder, b.actor, env, &b,
                                                 nullptr);
    }
    case MethodKind::kJepa: {
      auto it = zoo.jepa.find(method.param);
      if (it == zoo.jepa.end())
        throw ConfigError("method '" + method.name + "' needs a trained depth-" +
                          std::to_string(method.param) + " JEPA");
      const model::SingleLevelModel& m = it->second;
      return std::make_unique<RolloutController>(m.context_encoder, m.actor, env,
                                                 nullptr, &m);
    }
    case MethodKind::kSupervised: {
      auto it = zoo.supervised.find(method.param);
      if (it == zoo.supervised.end())
        throw ConfigError("method '" + method.name + "' needs a trained supervised model");
      const nn::Mlp& net = it->second;
      return std::make_unique<HoldController>([&net, &env](const std::vector<float>& x) {
        return model::supervised_action(net, x, env.plant);
      });
    }
    case MethodKind::kAutoencoder: {
      if (!zoo.autoencoder)
        throw ConfigError("method 'autoencoder' needs a trained auto-encoder");
      const model::AutoencoderModel& ae = *zoo.autoencoder;
      return std::make_unique<HoldController>([&ae, &env](const std::vector<float>& x) {
        return model::semantic_actor(ae.actor, model::encode(ae.encoder, x), env.plant);
      });
    }
  }
  throw ConfigError("unhandled method '" + method.name + "'");
}

EpisodeResult run_episode(const Environment& env, Controller& controller,
                          const plant::PlantState& initial, RandomStream noise,
                          int steps, const DeliveryFn& delivered,
                          int frame_stack) {
  EpisodeResult r;
  r.states.reserve(static_cast<std::size_t>(steps + 1));
  r.actions.reserve(static_cast<std::size_t>(steps));
  std::vector<plant::Observation> history;
  plant::PlantState s = initial;
  double total = 0.0;
  for (int k = 0; k < steps; ++k) {
    r.states.push_back(s);
    if (plant::has_failed(s, env.plant)) {
      r.failed = true;
      r.cost = std::numeric_limits<double>::infinity();
      return r;
    }
    std::vector<float> stacked;
    StepContext ctx{k, &s, nullptr};
    if (frame_stack > 0) {
      history.push_back(plant::render_observation(s, env.render));
      if (history.size() > static_cast<std::size_t>(frame_stack))
        history.erase(history.begin());
    }
    if (frame_stack > 0 && delivered(k)) {
      stacked = plant::stack_frames(history, frame_stack);
      ctx.received = &stacked;
      ++r.delivered;
    }
    const double u = plant::clamp_action(controller.act(ctx), env.plant).force;
    r.actions.push_back(u);
    total += plant::stage_cost(s, u, env.weights);
    s = plant::step_dynamics(s, {u}, env.plant, noise);
  }
  r.states.push_back(s);
  if (plant::has_failed(s, env.plant)) {
    r.failed = true;
    r.cost = std::numeric_limits<double>::infinity();
    return r;
  }
  const plant::StateVector x = s.vec();
  total += x.dot(env.lqr.cost_to_go * x);
  r.cost = total / steps;
  return r;
}

double control_score(double c_method, double c_oracle, double c_zero,
                     bool method_failed) {
  if (method_failed || !std::isfinite(c_method)) return 0.0;
  if (!std::isfinite(c_zero)) return 1.0;  // the zero-action run itself failed
  if (c_zero == c_oracle) return c_method <= c_oracle ? 1.0 : 0.0;
  return std::clamp((c_zero - c_method) / (c_zero - c_oracle), 0.0, 1.0);
}

RandomStream episode_noise(std::uint64_t noise_seed) {
  return make_stream(noise_seed, {kNoiseTag});
}

EpisodeReference make_reference(const Environment& env,
                                const plant::PlantState& initial,
                                std::uint64_t noise_seed, int steps) {
  EpisodeReference ref{initial, noise_seed, 0.0, 0.0};
  const auto always = [](int) { return true; };
  OracleController oracle(env);
  ref.c_oracle = run_episode(env, oracle, initial,
                             episode_noise(noise_seed), steps, always, 0)
                     .cost;
  ZeroController zero;
  ref.c_zero = run_episode(env, zero, initial,
                           episode_noise(noise_seed), steps, always, 0)
                   .cost;
  return ref;
}

}  // namespace hjepa::sim
