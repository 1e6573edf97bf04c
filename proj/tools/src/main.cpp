// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line entry point: generate, train, eval, sweep.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "hjepa/cli/commands.hpp"
#include "hjepa/error.hpp"
#include "hjepa/io/binary.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  std::string seed;
  std::string out_dir;
  int jobs = 1;
  std::vector<std::string> assignments;
};

hjepa::cli::ExperimentConfig build_config(const GlobalFlags& flags) {
  hjepa::cli::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    const hjepa::io::Bytes raw = hjepa::io::read_file(flags.config_path);
    hjepa::cli::apply_config_text(cfg, std::string(raw.begin(), raw.end()));
  }
  for (const std::string& a : flags.assignments) hjepa::cli::apply_assignment(cfg, a);
  if (!flags.seed.empty()) hjepa::cli::apply_setting(cfg, "seed", flags.seed);
  if (!flags.out_dir.empty()) hjepa::cli::apply_setting(cfg, "out_dir", flags.out_dir);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical JEPA control over wireless links"};
  app.set_version_flag("--version", hjepa::cli::version_string());
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "key = value config file");
  app.add_option("--seed", flags.seed, "root seed (u64)");
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--jobs", flags.jobs, "parallel jobs")->check(CLI::Range(1, 1024));
  app.add_option("--set", flags.assignments, "override key=value (repeatable)");

  CLI::App* generate = app.add_subcommand("generate", "simulate datasets D_H, D_M, D_L");
  CLI::App* train = app.add_subcommand("train", "train H-JEPA and baselines");
  CLI::App* eval = app.add_subcommand("eval", "encoding or prediction evaluation");
  std::string which = "encoding";
  std::string eval_methods;
  eval->add_option("--which", which, "encoding | prediction")->required();
  eval->add_option("--methods", eval_methods, "comma-separated method tags");
  CLI::App* sweep = app.add_subcommand("sweep", "devices supported vs target SNR");
  std::string sweep_methods;
  sweep->add_option("--methods", sweep_methods, "comma-separated method tags");
  CLI::App* show = app.add_subcommand("config", "print the effective configuration");
  for (CLI::App* sub : {generate, train, eval, sweep, show}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    const hjepa::cli::ExperimentConfig cfg = build_config(flags);
    if (*show) {
      std::cout << hjepa::cli::serialize_config(cfg);
    } else if (*generate) {
      hjepa::cli::cmd_generate(cfg, flags.jobs, std::cout);
    } else if (*train) {
      hjepa::cli::cmd_train(cfg, flags.jobs, std::cout);
    } else if (*eval) {
      hjepa::cli::cmd_eval(cfg, hjepa::cli::parse_eval_kind(which), eval_methods,
                           flags.jobs, std::cout);
    } else if (*sweep) {
      const auto o = hjepa::cli::cmd_sweep(cfg, sweep_methods, flags.jobs, std::cout);
      if (!o.result.monotonicity_violations.empty()) {
        std::string names;
        for (const std::string& n : o.result.monotonicity_violations)
          names += (names.empty() ? "" : ",") + n;
        throw hjepa::DataError("device count not monotone in SNR for: " + names);
      }
    }
  } catch (const hjepa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
