// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/cli/commands.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/io/binary.hpp"
#include "hjepa/model/training.hpp"
#include "hjepa/nn/checkpoint.hpp"
#include "hjepa/sim/generate.hpp"
#include "hjepa/sim/parallel.hpp"

namespace hjepa::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RunManifest start_manifest(const ExperimentConfig& cfg, const std::string& command) {
  RunManifest m;
  m.command = command;
  m.version = version_string();
  m.config = serialize_config(cfg);
  return m;
}

void write_losses(const std::filesystem::path& path,
                  const std::vector<model::EpochLog>& log) {
  std::string out = "stage,epoch,loss,learning_rate,batches\n";
  for (const model::EpochLog& e : log)
    out += e.stage + "," + std::to_string(e.epoch) + "," + format_real(e.loss) + "," +
           format_real(e.learning_rate) + "," + std::to_string(e.batches) + "\n";
  io::write_text_file(path, out);
}

std::vector<model::EpochLog> with_stage(std::vector<model::EpochLog> log,
                                        const std::string& stage) {
  for (model::EpochLog& e : log) e.stage = stage;
  return log;
}

// The stage-1 triple kept between `generate` and `train`.
void save_stage1(const std::filesystem::path& dir, const model::LatentStageResult& s) {
  using nn::ModelKind;
  nn::save_checkpoint(dir / "context_encoder.hjpc", s.context_encoder, ModelKind::kContextEncoder);
  nn::save_checkpoint(dir / "target_encoder.hjpc", s.target_encoder, ModelKind::kTargetEncoder);
  nn::save_checkpoint(dir / "predictor.hjpc", s.predictor, ModelKind::kPredictorHigh);
}

model::LatentStageResult load_stage1(const std::filesystem::path& dir) {
  using nn::ModelKind;
  if (!std::filesystem::exists(dir / "context_encoder.hjpc"))
    throw IoError("missing stage-1 checkpoint in '" + dir.string() +
                  "'; run the generate command first");
  model::LatentStageResult s;
  s.context_encoder = nn::load_checkpoint(dir / "context_encoder.hjpc", ModelKind::kContextEncoder);
  s.target_encoder = nn::load_checkpoint(dir / "target_encoder.hjpc", ModelKind::kTargetEncoder);
  s.predictor = nn::load_checkpoint(dir / "predictor.hjpc", ModelKind::kPredictorHigh);
  return s;
}

data::Dataset load_required(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw IoError("missing dataset '" + path.string() + "'; run the generate command first");
  return data::load_dataset(path);
}

void add_tree(RunManifest& m, const std::filesystem::path& root,
              const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) m.add_artifact(root, f);
}

sim::SweepConfig sweep_config(const ExperimentConfig& cfg) {
  sim::SweepConfig s = cfg.sweep;
  s.init = cfg.generation.init;
  return s;
}

}  // namespace

std::filesystem::path write_manifest(const ExperimentConfig& cfg,
                                     const RunManifest& manifest) {
  const std::filesystem::path path = Layout{cfg.out_dir}.manifest(manifest.command);
  io::write_text_file(path, manifest.render());
  return path;
}

RunManifest cmd_generate(const ExperimentConfig& cfg, int jobs, std::ostream& log) {
  cfg.validate();
  const Layout out{cfg.out_dir};
  const sim::Environment env = cfg.environment();
  RunManifest m = start_manifest(cfg, "generate");
  const auto& g = cfg.generation;
  const auto& h = cfg.hjepa;

  auto t0 = Clock::now();
  const data::Dataset high = sim::generate_state_dataset(
      env, g, cfg.seed, sim::DatasetTag::kHigh, g.train_high, g.test_high, h.depth_high, jobs);
  data::save_dataset(out.dataset("high"), high);
  m.timings_s.emplace_back("dataset_high", seconds_since(t0));
  log << "generated D_H: " << high.train_count << " train / " << high.test_count()
      << " test trajectories\n";

  t0 = Clock::now();
  const model::LatentStageResult stage1 = model::train_latent_stage(
      high, h, cfg.train, h.depth_high, cfg.seed);
  save_stage1(out.model("stage1"), stage1);
  write_losses(out.loss_log("stage1"), with_stage(stage1.log, "stage1"));
  m.timings_s.emplace_back("stage1", seconds_since(t0));
  log << "trained stage 1 (encoder + high-level predictor), final loss "
      << format_real(stage1.log.empty() ? 0.0 : stage1.log.back().loss) << "\n";

  // Embeddings come from the stored (float32) encoder so that a later
  // `train` sees exactly the same features.
  const model::LatentStageResult frozen = load_stage1(out.model("stage1"));
  t0 = Clock::now();
  const std::pair<sim::DatasetTag, std::string> ml[] = {
      {sim::DatasetTag::kMedium, "medium"}, {sim::DatasetTag::kLow, "low"}};
  for (const auto& [tag, name] : ml) {
    const int stride = tag == sim::DatasetTag::kMedium ? h.depth_medium : h.depth_low;
    const data::Dataset frames = sim::generate_state_dataset(
        env, g, cfg.seed, tag, g.train_ml, g.test_ml, stride, jobs);
    data::save_dataset(out.dataset(name),
                       sim::embed_dataset(frames, frozen.context_encoder,
                                          h.frame_stack, stride, jobs));
    log << "generated D_" << (name == "medium" ? "M" : "L") << ": " << frames.train_count
        << " train / " << frames.test_count() << " test trajectories\n";
  }
  m.timings_s.emplace_back("datasets_medium_low", seconds_since(t0));

  std::uint64_t regenerated = 0;
  for (const data::Trajectory& t : high.trajectories) regenerated += t.attempts - 1;
  m.notes.emplace_back("regenerated_trajectories_high", std::to_string(regenerated));
  m.notes.emplace_back("ema_rate", format_real(h.ema_rate));
  for (const char* name : {"high", "medium", "low"}) m.add_artifact(out.root, out.dataset(name));
  add_tree(m, out.root, out.model("stage1"));
  m.add_artifact(out.root, out.loss_log("stage1"));
  write_manifest(cfg, m);
  return m;
}

RunManifest cmd_train(const ExperimentConfig& cfg, int jobs, std::ostream& log) {
  cfg.validate();
  const Layout out{cfg.out_dir};
  RunManifest m = start_manifest(cfg, "train");
  const auto& h = cfg.hjepa;
  const data::Dataset high = load_required(out.dataset("high"));
  const data::Dataset medium = load_required(out.dataset("medium"));
  const data::Dataset low = load_required(out.dataset("low"));
  const model::LatentStageResult stage1 = load_stage1(out.model("stage1"));

  // Independent stages run as parallel tasks; each writes only its outputs.
  struct Task {
    std::string name;
    std::function<void()> run;
    double seconds = 0.0;
  };
  std::vector<Task> tasks;
  std::vector<std::filesystem::path> outputs;
  tasks.push_back({"hjepa", [&] {
    model::HjepaTrainingResult r =
        model::train_hjepa(stage1, high, medium, low, h, cfg.train, cfg.seed);
    model::save_bundle(out.model("hjepa"), r.bundle);
    std::map<std::string, std::vector<model::EpochLog>> by_stage;
    for (const model::EpochLog& e : r.log)
      if (e.stage != "stage1" && e.stage.rfind("latent", 0) != 0) by_stage[e.stage].push_back(e);
    for (const auto& [stage, entries] : by_stage)
      write_losses(out.loss_log("hjepa_" + stage), with_stage(entries, "hjepa_" + stage));
  }});
  outputs.push_back(out.model("hjepa"));
  for (int d : cfg.jepa_depths) {
    const std::string name = "jepa" + std::to_string(d);
    tasks.push_back({name, [&, d, name] {
      model::SingleLevelModel sm;
      sm.depth = d;
      if (d == h.depth_high) {
        sm.context_encoder = stage1.context_encoder;
        sm.target_encoder = stage1.target_encoder;
        sm.predictor = stage1.predictor;
      } else {
        model::LatentStageResult s = model::train_latent_stage(high, h, cfg.train, d, cfg.seed);
        write_losses(out.loss_log(name + "_latent"), with_stage(s.log, name + "_latent"));
        // Evaluate exactly what a reload would see.
        nn::round_to_f32(s.context_encoder);
        sm.context_encoder = std::move(s.context_encoder);
        sm.target_encoder = std::move(s.target_encoder);
        sm.predictor = std::move(s.predictor);
      }
      model::ActorStageResult a = model::train_actor(
          model::embed_steps(sm.context_encoder, high, h.frame_stack, 0, high.train_count),
          model::oracle_actions(high, 0, high.train_count), h, cfg.train, cfg.seed);
      sm.actor = std::move(a.actor);
      write_losses(out.loss_log(name + "_actor"), with_stage(a.log, name + "_actor"));
      model::save_single_level(out.model(name), sm);
    }});
    outputs.push_back(out.model(name));
  }
  for (int k : cfg.supervised_stacks) {
    const std::string name = "supervised" + std::to_string(k);
    tasks.push_back({name, [&, k, name] {
      model::SupervisedResult r = model::train_supervised(high, k, h, cfg.train, cfg.seed);
      nn::save_checkpoint(out.model(name + ".hjpc"), r.net, nn::ModelKind::kSupervised);
      write_losses(out.loss_log(name), with_stage(r.log, name));
    }});
    outputs.push_back(out.model(name + ".hjpc"));
  }
  if (cfg.train_autoencoder) {
    tasks.push_back({"autoencoder", [&] {
      model::AutoencoderResult r = model::train_autoencoder(high, h, cfg.train, cfg.seed);
      model::save_autoencoder(out.model("autoencoder"), r.model);
      std::map<std::string, std::vector<model::EpochLog>> by_stage;
      for (const model::EpochLog& e : r.log) by_stage[e.stage].push_back(e);
      for (const auto& [stage, entries] : by_stage) write_losses(out.loss_log(stage), entries);
    }});
    outputs.push_back(out.model("autoencoder"));
  }

  std::mutex log_mutex;
  sim::parallel_for(static_cast<int>(tasks.size()), jobs, [&](int i) {
    Task& t = tasks[static_cast<std::size_t>(i)];
    const auto t0 = Clock::now();
    t.run();
    t.seconds = seconds_since(t0);
    std::lock_guard<std::mutex> lock(log_mutex);
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(1) << t.seconds;
    log << "trained " << t.name << " (" << secs.str() << " s)\n";
  });
  for (const Task& t : tasks) m.timings_s.emplace_back(t.name, t.seconds);
  m.notes.emplace_back("ema_rate", format_real(h.ema_rate));
  for (const auto& p : outputs) {
    if (std::filesystem::is_directory(p)) {
      add_tree(m, out.root, p);
    } else {
      m.add_artifact(out.root, p);
    }
  }
  std::vector<std::filesystem::path> logs;
  for (const auto& e : std::filesystem::directory_iterator(out.root / "logs"))
    logs.push_back(e.path());
  std::sort(logs.begin(), logs.end());
  for (const auto& p : logs) m.add_artifact(out.root, p);
  write_manifest(cfg, m);
  return m;
}

EvalKind parse_eval_kind(const std::string& which) {
  if (which == "encoding") return EvalKind::kEncoding;
  if (which == "prediction") return EvalKind::kPrediction;
  throw ConfigError("--which must be 'encoding' or 'prediction', got '" + which + "'");
}

sim::ModelZoo load_zoo(const ExperimentConfig& cfg,
                       const std::vector<sim::Method>& methods) {
  const Layout out{cfg.out_dir};
  sim::ModelZoo zoo;
  const auto need_dir = [](const std::filesystem::path& p, const std::string& method) {
    if (!std::filesystem::exists(p))
      throw IoError("missing checkpoint '" + p.string() + "' for method '" + method +
                    "'; run the train command first");
  };
  for (const sim::Method& m : methods) {
    switch (m.kind) {
      case sim::MethodKind::kOracle:
      case sim::MethodKind::kZero:
        break;
      case sim::MethodKind::kRepeat:
      case sim::MethodKind::kHjepa:
        if (!zoo.hjepa) {
          need_dir(out.model("hjepa"), m.name);
          zoo.hjepa = model::load_bundle(out.model("hjepa"));
        }
        break;
      case sim::MethodKind::kJepa: {
        const auto dir = out.model(m.name);
        need_dir(dir, m.name);
        zoo.jepa.emplace(m.param, model::load_single_level(dir));
        break;
      }
      case sim::MethodKind::kSupervised: {
        const auto file = out.model(m.name + ".hjpc");
        need_dir(file, m.name);
        zoo.supervised.emplace(m.param, nn::load_checkpoint(file, nn::ModelKind::kSupervised));
        break;
      }
      case sim::MethodKind::kAutoencoder:
        need_dir(out.model("autoencoder"), m.name);
        zoo.autoencoder = model::load_autoencoder(out.model("autoencoder"));
        break;
    }
  }
  return zoo;
}

EvalOutcome cmd_eval(const ExperimentConfig& cfg, EvalKind which,
                     const std::string& methods, int jobs, std::ostream& log) {
  cfg.validate();
  const Layout out{cfg.out_dir};
  const bool encoding = which == EvalKind::kEncoding;
  const std::string name = encoding ? "encoding" : "prediction";
  EvalOutcome o{start_manifest(cfg, "eval_" + name), {}};
  const std::vector<sim::Method> list = sim::parse_methods(
      !methods.empty() ? methods : encoding ? cfg.encoding_methods : cfg.prediction_methods);
  const sim::ModelZoo zoo = load_zoo(cfg, list);
  const sim::Environment env = cfg.environment();
  const data::Dataset high = load_required(out.dataset("high"));
  const auto t0 = Clock::now();
  o.result = encoding ? sim::eval_encoding(env, zoo, list, high, jobs)
                      : sim::eval_prediction(env, zoo, list, high, cfg.hjepa.horizon,
                                             cfg.seed, jobs);
  o.manifest.timings_s.emplace_back("evaluation", seconds_since(t0));
  sim::emit_metrics(o.result.rows, out.metrics(name));
  for (const sim::MetricRow& r : o.result.rows) {
    if (!encoding && r.horizon_offset != cfg.hjepa.horizon) continue;
    log << r.method << (encoding ? "" : " @" + std::to_string(*r.horizon_offset))
        << ": error " << format_real(*r.control_error) << ", bits "
        << format_real(*r.comm_bits) << "\n";
  }
  if (!encoding) {
    // Paired one-sided tests at the last offset against every other method.
    const int last = cfg.hjepa.horizon - 1;
    for (const sim::Method& m : list) {
      if (m.kind != sim::MethodKind::kHjepa) continue;
      for (const sim::Method& other : list) {
        if (other.name == m.name) continue;
        const sim::PairedTest t = sim::paired_t_test(
            sim::errors_at(o.result, other.name, last), sim::errors_at(o.result, m.name, last));
        const std::string key = "paired_test." + other.name + "_minus_" + m.name;
        o.manifest.notes.emplace_back(
            key, "mean " + format_real(t.mean_difference) + ", t " + format_real(t.t_statistic) +
                     ", p " + format_real(t.p_value) + ", n " + std::to_string(t.n));
        log << key << ": t = " << format_real(t.t_statistic) << ", p = "
            << format_real(t.p_value) << "\n";
      }
    }
  }
  o.manifest.add_artifact(out.root, out.metrics(name));
  write_manifest(cfg, o.manifest);
  return o;
}

SweepOutcome cmd_sweep(const ExperimentConfig& cfg, const std::string& methods,
                       int jobs, std::ostream& log) {
  cfg.validate();
  const Layout out{cfg.out_dir};
  SweepOutcome o{start_manifest(cfg, "sweep"), {}};
  const std::vector<sim::Method> list =
      sim::parse_methods(!methods.empty() ? methods : cfg.sweep_methods);
  const sim::ModelZoo zoo = load_zoo(cfg, list);
  const sim::Environment env = cfg.environment();
  const auto t0 = Clock::now();
  o.result = sim::scalability_sweep(env, zoo, list, sweep_config(cfg), cfg.seed, jobs);
  o.manifest.timings_s.emplace_back("sweep", seconds_since(t0));
  sim::emit_metrics(o.result.rows, out.metrics("sweep"));
  for (const sim::ScalabilityPoint& p : o.result.points) {
    o.manifest.notes.emplace_back(
        "search." + p.method + "@" + format_real(p.snr_db) + "dB",
        std::to_string(p.evaluations) + " probes, " + std::to_string(p.episodes_simulated) +
            " episodes");
    log << p.method << " @ " << format_real(p.snr_db) << " dB: " << p.max_devices
        << " devices (score " << format_real(p.score) << ")\n";
  }
  // Device gain of H-JEPA over the no-prediction embedding baseline.
  const auto devices_at = [&](const std::string& method, double snr) -> std::optional<long long> {
    for (const sim::ScalabilityPoint& p : o.result.points)
      if (p.method == method && p.snr_db == snr) return p.max_devices;
    return std::nullopt;
  };
  for (double snr : cfg.sweep.snr_db) {
    const auto a = devices_at("hjepa", snr);
    const auto b = devices_at("repeat", snr);
    if (!a || !b) continue;
    const std::string gain = format_real(sim::percent_gain(*a, *b));
    o.manifest.notes.emplace_back("gain_vs_repeat@" + format_real(snr) + "dB", gain + " %");
    log << "hjepa vs repeat @ " << format_real(snr) << " dB: " << std::fixed
        << std::setprecision(2) << sim::percent_gain(*a, *b)
        << " % more devices (reference figure " << kReportedDeviceGainPercent << " %)\n"
        << std::defaultfloat << std::setprecision(6);
  }
  if (!o.result.monotonicity_violations.empty()) {
    std::string names;
    for (const std::string& n : o.result.monotonicity_violations)
      names += (names.empty() ? "" : ",") + n;
    o.manifest.notes.emplace_back("monotonicity_violations", names);
  }
  o.manifest.add_artifact(out.root, out.metrics("sweep"));
  write_manifest(cfg, o.manifest);
  return o;
}

}  // namespace hjepa::cli
