// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hjepa/model/networks.hpp"
#include "hjepa/sim/environment.hpp"

namespace hjepa::sim {

enum class MethodKind {
  kOracle,       // true state, no channel; the score's upper anchor
  kZero,         // force 0 always; the score's lower anchor
  kRepeat,       // H-JEPA encoder + actor, holds the last action on outage
  kHjepa,        // hierarchical latent rollout on outage
  kJepa,         // single-level rollout of depth `param` on outage
  kSupervised,   // kappa = `param` frames -> action, holds on outage
  kAutoencoder,  // auto-encoder latent + actor, holds on outage
};

// Parsed method tag: oracle, zero, repeat, hjepa, jepa<d>, supervised<k>,
// autoencoder.
struct Method {
  std::string name;
  MethodKind kind = MethodKind::kZero;
  int param = 0;
};

// Throws ConfigError for unknown tags.
Method parse_method(const std::string& name);
std::vector<Method> parse_methods(const std::string& comma_list);

// Whether the method sends raw frames (true) or embeddings (false) per update;
// oracle and zero send nothing over the simulated link.
bool transmits_frames(const Method& method);

// Trained models available to the evaluations.
struct ModelZoo {
  std::optional<model::ModelBundle> hjepa;
  std::map<int, model::SingleLevelModel> jepa;  // by depth
  std::map<int, nn::Mlp> supervised;            // by kappa
  std::optional<model::AutoencoderModel> autoencoder;
};

// Bits per update: d_z * embedding_bits for embedding methods, the stacked
// raw frames at 8 bits per pixel for frame methods (oracle counts as a
// kappa-frame state transmission), 0 for zero-action.
double payload_bits(const Method& method, const ModelZoo& zoo,
                    const Environment& env, int embedding_bits = 32);

// Frames per update the method consumes (0 when it needs no observation).
int frames_per_update(const Method& method, const ModelZoo& zoo,
                      const Environment& env);

struct StepContext {
  int step = 0;
  const plant::PlantState* state = nullptr;  // only the oracle may read it
  const std::vector<float>* received = nullptr;  // delivered stacked frames
};

class Controller {
 public:
  virtual ~Controller() = default;
  // Saturated force for this step.
  virtual double act(const StepContext& ctx) = 0;
};

// Throws ConfigError when a required model is missing from the zoo.
std::unique_ptr<Controller> make_controller(const Method& method,
                                            const ModelZoo& zoo,
                                            const Environment& env);

// Called once per step; true when that step's update reaches the controller.
using DeliveryFn = std::function<bool(int step)>;

struct EpisodeResult {
  bool failed = false;
  double cost = 0.0;  // (sum of stage costs + terminal x'Px) / steps
  int delivered = 0;
  std::vector<plant::PlantState> states;  // x_0 .. x_steps (fewer on failure)
  std::vector<double> actions;            // u_0 .. u_{steps-1}
};

// Closed loop for `steps` sampling periods. The device renders every step and
// stacks its own history; the controller sees the stack only when delivered.
// `noise` drives the process noise, so equal streams give common random
// numbers across methods.
EpisodeResult run_episode(const Environment& env, Controller& controller,
                          const plant::PlantState& initial, RandomStream noise,
                          int steps, const DeliveryFn& delivered,
                          int frame_stack);

// clip((c_zero - c_method) / (c_zero - c_oracle), 0, 1); 0 on failure; when
// c_zero == c_oracle, 1 if c_method <= c_oracle else 0.
double control_score(double c_method, double c_oracle, double c_zero,
                     bool method_failed);

// Reference runs of one episode shared by every method and device count.
struct EpisodeReference {
  plant::PlantState initial;
  std::uint64_t noise_seed = 0;
  double c_oracle = 0.0;
  double c_zero = 0.0;
};

EpisodeReference make_reference(const Environment& env,
                                const plant::PlantState& initial,
                                std::uint64_t noise_seed, int steps);

RandomStream episode_noise(std::uint64_t noise_seed);

}  // namespace hjepa::sim
