// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/dataset.hpp"

#include <algorithm>
#include <string>

#include "hjepa/error.hpp"

namespace hjepa::data {
namespace {

constexpr char kMagic[] = "HJPD";

}  // namespace

int Dataset::length() const {
  return trajectories.empty() ? 0 : trajectories.front().length();
}

void Dataset::validate() const {
  if (feature_dim <= 0) throw DataError("dataset feature_dim must be > 0");
  if (train_count < 0 || train_count > static_cast<int>(trajectories.size()))
    throw DataError("dataset train count out of range");
  const int len = length();
  for (const Trajectory& t : trajectories) {
    if (t.length() != len || static_cast<int>(t.applied.size()) != len ||
        static_cast<int>(t.oracle.size()) != len ||
        t.features.size() != static_cast<std::size_t>(len) * feature_dim)
      throw DataError("dataset trajectories have inconsistent lengths");
  }
  if (type == RecordType::kStatePairs &&
      frame_width * frame_height * frame_channels != feature_dim)
    throw DataError("frame geometry does not match feature_dim");
}

io::Bytes encode_dataset(const Dataset& ds) {
  ds.validate();
  io::BinaryWriter w;
  w.bytes(kMagic);
  w.u16(kDatasetVersion);
  w.u16(static_cast<std::uint16_t>(ds.type));
  w.u32(static_cast<std::uint32_t>(ds.stride));
  w.u32(static_cast<std::uint32_t>(ds.feature_dim));
  w.u32(static_cast<std::uint32_t>(ds.frame_width));
  w.u32(static_cast<std::uint32_t>(ds.frame_height));
  w.u32(static_cast<std::uint32_t>(ds.frame_channels));
  w.u32(static_cast<std::uint32_t>(ds.length()));
  w.u32(static_cast<std::uint32_t>(ds.trajectories.size()));
  w.u32(static_cast<std::uint32_t>(ds.train_count));
  for (const Trajectory& t : ds.trajectories) {
    w.u64(t.seed);
    w.u32(t.attempts);
    for (int k = 0; k < t.length(); ++k) {
      const plant::PlantState& s = t.states[k];
      w.f32(static_cast<float>(s.cart_position));
      w.f32(static_cast<float>(s.cart_velocity));
      w.f32(static_cast<float>(s.pole_angle));
      w.f32(static_cast<float>(s.pole_angular_velocity));
      w.f32(static_cast<float>(t.applied[k]));
      w.f32(static_cast<float>(t.oracle[k]));
      for (float f : t.feature(k, ds.feature_dim)) w.f32(f);
    }
  }
  return w.take();
}

Dataset decode_dataset(const io::Bytes& bytes) {
  io::BinaryReader r(bytes);
  if (r.bytes(4) != kMagic) throw DataError("not a dataset file (bad magic)");
  const std::uint16_t version = r.u16();
  if (version != kDatasetVersion)
    throw DataError("unsupported dataset version " + std::to_string(version));
  Dataset ds;
  const std::uint16_t type = r.u16();
  if (type != 1 && type != 2)
    throw DataError("unknown dataset record type " + std::to_string(type));
  ds.type = static_cast<RecordType>(type);
  ds.stride = static_cast<int>(r.u32());
  ds.feature_dim = static_cast<int>(r.u32());
  ds.frame_width = static_cast<int>(r.u32());
  ds.frame_height = static_cast<int>(r.u32());
  ds.frame_channels = static_cast<int>(r.u32());
  const int len = static_cast<int>(r.u32());
  const std::uint32_t count = r.u32();
  ds.train_count = static_cast<int>(r.u32());
  const std::size_t per_step = 6 + static_cast<std::size_t>(ds.feature_dim);
  if (r.remaining() !=
      count * (12 + per_step * 4 * static_cast<std::size_t>(len)))
    throw DataError("dataset size does not match its header");
  ds.trajectories.resize(count);
  for (Trajectory& t : ds.trajectories) {
    t.seed = r.u64();
    t.attempts = r.u32();
    t.states.resize(len);
    t.applied.resize(len);
    t.oracle.resize(len);
    t.features.resize(static_cast<std::size_t>(len) * ds.feature_dim);
    for (int k = 0; k < len; ++k) {
      plant::PlantState& s = t.states[k];
      s.cart_position = r.f32();
      s.cart_velocity = r.f32();
      s.pole_angle = r.f32();
      s.pole_angular_velocity = r.f32();
      t.applied[k] = r.f32();
      t.oracle[k] = r.f32();
      float* f = t.features.data() + static_cast<std::size_t>(k) * ds.feature_dim;
      for (int i = 0; i < ds.feature_dim; ++i) f[i] = r.f32();
    }
  }
  r.expect_end("dataset");
  ds.validate();
  return ds;
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
  io::write_file(path, encode_dataset(ds));
}

Dataset load_dataset(const std::filesystem::path& path) {
  return decode_dataset(io::read_file(path));
}

void round_to_f32(Dataset& ds) {
  auto round = [](double& v) { v = static_cast<float>(v); };
  for (Trajectory& t : ds.trajectories) {
    for (plant::PlantState& s : t.states) {
      round(s.cart_position);
      round(s.cart_velocity);
      round(s.pole_angle);
      round(s.pole_angular_velocity);
    }
    std::for_each(t.applied.begin(), t.applied.end(), round);
    std::for_each(t.oracle.begin(), t.oracle.end(), round);
  }
}

nn::Matrix stacked_rows(const Dataset& ds,
                        std::span<const std::pair<int, int>> items, int kappa) {
  if (ds.type != RecordType::kStatePairs)
    throw DataError("stacked observations need a state-pairs dataset");
  const int f = ds.feature_dim;
  nn::Matrix rows(static_cast<Eigen::Index>(items.size()),
                  static_cast<Eigen::Index>(f) * kappa);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [traj, step] = items[i];
    const Trajectory& t = ds.trajectories.at(static_cast<std::size_t>(traj));
    for (int slot = 0; slot < kappa; ++slot) {
      const int k = std::max(0, step - (kappa - 1 - slot));
      const std::span<const float> frame = t.feature(k, f);
      for (int p = 0; p < f; ++p)
        rows(static_cast<Eigen::Index>(i), slot * f + p) = frame[p];
    }
  }
  return rows;
}

nn::Matrix feature_rows(const Dataset& ds,
                        std::span<const std::pair<int, int>> items) {
  const int f = ds.feature_dim;
  nn::Matrix rows(static_cast<Eigen::Index>(items.size()), f);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [traj, step] = items[i];
    const std::span<const float> v =
        ds.trajectories.at(static_cast<std::size_t>(traj)).feature(step, f);
    for (int p = 0; p < f; ++p) rows(static_cast<Eigen::Index>(i), p) = v[p];
  }
  return rows;
}

}  // namespace hjepa::data
