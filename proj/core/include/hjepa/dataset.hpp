// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hjepa/io/binary.hpp"
#include "hjepa/nn/param_set.hpp"
#include "hjepa/plant.hpp"

namespace hjepa::data {

enum class RecordType : std::uint16_t {
  kStatePairs = 1,      // per-step rendered frames
  kEmbeddingPairs = 2,  // per-step context-encoder embeddings
};

// One logged closed-loop rollout. Per step k: plant state x_k, applied
// (exploration) action u_k, oracle action u*_k, and a feature row that is
// either the frame of x_k or the embedding of the stacked observation at k.
struct Trajectory {
  std::uint64_t seed = 0;       // root seed used for this record
  std::uint32_t attempts = 1;   // 1 + number of regenerated divergent tries
  std::vector<plant::PlantState> states;
  std::vector<double> applied;
  std::vector<double> oracle;
  std::vector<float> features;  // length() x feature_dim, row-major

  int length() const { return static_cast<int>(states.size()); }
  std::span<const float> feature(int step, int feature_dim) const {
    return {features.data() + static_cast<std::size_t>(step) * feature_dim,
            static_cast<std::size_t>(feature_dim)};
  }
};

struct Dataset {
  RecordType type = RecordType::kStatePairs;
  int stride = 1;        // pair stride the split is intended for
  int feature_dim = 0;   // frame size or embedding width
  int frame_width = 0;   // render geometry (state-pairs only)
  int frame_height = 0;
  int frame_channels = 0;
  int train_count = 0;   // trajectories[0, train_count) are training data
  std::vector<Trajectory> trajectories;

  int length() const;  // common trajectory length (0 when empty)
  int test_count() const {
    return static_cast<int>(trajectories.size()) - train_count;
  }
  void validate() const;
};

// File layout: "HJPD", u16 version, u16 record type, dims table (u32 stride,
// u32 feature_dim, u32 width, u32 height, u32 channels, u32 length),
// u32 trajectory count, u32 train count, then per trajectory u64 seed,
// u32 attempts, and per step 4 state values, applied action, oracle action
// and feature_dim features, all little-endian float32.
inline constexpr std::uint16_t kDatasetVersion = 1;

io::Bytes encode_dataset(const Dataset& ds);
Dataset decode_dataset(const io::Bytes& bytes);
void save_dataset(const std::filesystem::path& path, const Dataset& ds);
Dataset load_dataset(const std::filesystem::path& path);

// Rounds every stored value through float32 so in-memory data equals what a
// save/load round trip yields.
void round_to_f32(Dataset& ds);

// Stacked observation rows for (trajectory, step) pairs of a state-pairs
// dataset: kappa frames oldest first, replicating the first frame at the
// start of a trajectory.
nn::Matrix stacked_rows(const Dataset& ds,
                        std::span<const std::pair<int, int>> items, int kappa);

// Feature rows of (trajectory, step) pairs verbatim.
nn::Matrix feature_rows(const Dataset& ds,
                        std::span<const std::pair<int, int>> items);

}  // namespace hjepa::data
