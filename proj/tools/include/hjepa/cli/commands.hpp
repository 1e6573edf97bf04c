// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hjepa/cli/config.hpp"
#include "hjepa/cli/manifest.hpp"
#include "hjepa/sim/evaluate.hpp"
#include "hjepa/sim/sweep.hpp"

namespace hjepa::cli {

// File layout below out_dir.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path dataset(const std::string& name) const {
    return root / "datasets" / ("d_" + name + ".hjpd");
  }
  std::filesystem::path model(const std::string& name) const {
    return root / "models" / name;
  }
  std::filesystem::path loss_log(const std::string& stage) const {
    return root / "logs" / ("loss_" + stage + ".csv");
  }
  std::filesystem::path metrics(const std::string& name) const {
    return root / "metrics" / (name + ".csv");
  }
  std::filesystem::path manifest(const std::string& command) const {
    return root / ("manifest_" + command + ".txt");
  }
};

// Datasets D_H, D_M, D_L. D_M and D_L hold embeddings of the stage-1
// context encoder, so stage 1 (encoder + high-level predictor) is trained
// here and kept under models/stage1 for `train`.
RunManifest cmd_generate(const ExperimentConfig& cfg, int jobs, std::ostream& log);

// Every model needed by the configured methods, plus per-stage loss CSVs.
RunManifest cmd_train(const ExperimentConfig& cfg, int jobs, std::ostream& log);

enum class EvalKind { kEncoding, kPrediction };
EvalKind parse_eval_kind(const std::string& which);

struct EvalOutcome {
  RunManifest manifest;
  sim::EvaluationResult result;
};
// methods overrides the configured list when non-empty.
EvalOutcome cmd_eval(const ExperimentConfig& cfg, EvalKind which,
                     const std::string& methods, int jobs, std::ostream& log);

struct SweepOutcome {
  RunManifest manifest;
  sim::SweepResult result;
};
SweepOutcome cmd_sweep(const ExperimentConfig& cfg, const std::string& methods,
                       int jobs, std::ostream& log);

// Loads the models the listed methods need from out_dir/models.
sim::ModelZoo load_zoo(const ExperimentConfig& cfg,
                       const std::vector<sim::Method>& methods);

// Writes the manifest next to the outputs and returns its path.
std::filesystem::path write_manifest(const ExperimentConfig& cfg,
                                     const RunManifest& manifest);

// Published device-count gain printed beside the measured one.
inline constexpr double kReportedDeviceGainPercent = 42.83;

}  // namespace hjepa::cli
