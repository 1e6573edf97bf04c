// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hjepa::cli {

// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

// Plain-text record of one command run.
struct RunManifest {
  std::string command;
  std::string version;
  std::string config;  // serialize_config output
  std::vector<std::pair<std::string, std::string>> artifacts;  // path, sha256
  std::vector<std::pair<std::string, double>> timings_s;
  std::vector<std::pair<std::string, std::string>> notes;

  // Hashes `path` (stored relative to `root`).
  void add_artifact(const std::filesystem::path& root,
                    const std::filesystem::path& path);
  std::string render() const;
};

// Reads back the artifact table of a rendered manifest.
std::vector<std::pair<std::string, std::string>> manifest_artifacts(
    const std::string& text);

std::string version_string();

}  // namespace hjepa::cli
