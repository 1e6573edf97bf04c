// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "hjepa/io/binary.hpp"
#include "hjepa/nn/mlp.hpp"

namespace hjepa::nn {

// Role tag stored in the checkpoint header.
enum class ModelKind : std::uint16_t {
  kContextEncoder = 1,
  kTargetEncoder = 2,
  kPredictorHigh = 3,
  kPredictorMedium = 4,
  kPredictorLow = 5,
  kActor = 6,
  kDecoder = 7,
  kSupervised = 8,
};

inline constexpr std::uint16_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelKind kind = ModelKind::kContextEncoder;
  Mlp net;
};

// Layout: "HJPC", u16 version, u16 kind, u8 l2_normalize, u8 standardize,
// u8 input_skip,
// u32 layer count, per layer (u32 in, u32 out, u8 activation, u8 residual),
// u32 tensor count, per tensor (u16 name length, name, u8 trainable,
// u8 rank = 2, u32 rows, u32 cols), then every tensor's values row-major as
// little-endian float32 in declaration order.
io::Bytes encode_checkpoint(const Mlp& net, ModelKind kind);
Checkpoint decode_checkpoint(const io::Bytes& bytes);

void save_checkpoint(const std::filesystem::path& path, const Mlp& net,
                     ModelKind kind);
// When expected_kind is given, a mismatching file is a DataError.
Checkpoint load_checkpoint(const std::filesystem::path& path);
Mlp load_checkpoint(const std::filesystem::path& path, ModelKind expected_kind);

// Rounds every parameter through float32, matching a save/load round trip.
void round_to_f32(Mlp& net);

}  // namespace hjepa::nn
