// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/checkpoint.hpp"

#include <string>

#include "hjepa/error.hpp"

namespace hjepa::nn {
namespace {

constexpr char kMagic[] = "HJPC";

}  // namespace

io::Bytes encode_checkpoint(const Mlp& net, ModelKind kind) {
  io::BinaryWriter w;
  w.bytes(kMagic);
  w.u16(kCheckpointVersion);
  w.u16(static_cast<std::uint16_t>(kind));
  w.u8(net.transform().l2_normalize ? 1 : 0);
  w.u8(net.transform().standardize ? 1 : 0);
  w.u8(net.input_skip() ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(net.layers().size()));
  for (const LayerSpec& l : net.layers()) {
    w.u32(static_cast<std::uint32_t>(l.in));
    w.u32(static_cast<std::uint32_t>(l.out));
    w.u8(static_cast<std::uint8_t>(l.activation));
    w.u8(l.residual ? 1 : 0);
  }
  const ParamSet& params = net.params();
  w.u32(static_cast<std::uint32_t>(params.size()));
  for (const Tensor& t : params) {
    w.str(t.name);
    w.u8(t.trainable ? 1 : 0);
    w.u8(2);
    w.u32(static_cast<std::uint32_t>(t.value.rows()));
    w.u32(static_cast<std::uint32_t>(t.value.cols()));
  }
  for (const Tensor& t : params)
    for (Eigen::Index r = 0; r < t.value.rows(); ++r)
      for (Eigen::Index c = 0; c < t.value.cols(); ++c)
        w.f32(static_cast<float>(t.value(r, c)));
  return w.take();
}

Checkpoint decode_checkpoint(const io::Bytes& bytes) {
  io::BinaryReader r(bytes);
  if (r.bytes(4) != kMagic) throw DataError("not a checkpoint (bad magic)");
  const std::uint16_t version = r.u16();
  if (version != kCheckpointVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  Checkpoint out;
  out.kind = static_cast<ModelKind>(r.u16());
  InputTransform transform;
  transform.l2_normalize = r.u8() != 0;
  transform.standardize = r.u8() != 0;
  const bool input_skip = r.u8() != 0;
  const std::uint32_t layer_count = r.u32();
  std::vector<LayerSpec> layers(layer_count);
  for (LayerSpec& l : layers) {
    l.in = static_cast<int>(r.u32());
    l.out = static_cast<int>(r.u32());
    const std::uint8_t act = r.u8();
    if (act > 1) throw DataError("unknown activation tag " + std::to_string(act));
    l.activation = static_cast<Activation>(act);
    l.residual = r.u8() != 0;
  }
  Mlp net(layers, transform, input_skip);
  ParamSet& params = net.params();
  const std::uint32_t tensor_count = r.u32();
  if (tensor_count != params.size())
    throw DataError("checkpoint tensor table does not match its layer table");
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& t = params[i];
    const std::string name = r.str();
    const bool trainable = r.u8() != 0;
    const std::uint8_t rank = r.u8();
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (name != t.name || trainable != t.trainable || rank != 2 ||
        rows != t.value.rows() || cols != t.value.cols())
      throw DataError("checkpoint tensor '" + name + "' has an unexpected shape");
  }
  for (Tensor& t : params)
    for (Eigen::Index row = 0; row < t.value.rows(); ++row)
      for (Eigen::Index c = 0; c < t.value.cols(); ++c) t.value(row, c) = r.f32();
  r.expect_end("checkpoint");
  if (!params.all_finite()) throw DataError("checkpoint holds non-finite values");
  out.net = std::move(net);
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const Mlp& net,
                     ModelKind kind) {
  io::write_file(path, encode_checkpoint(net, kind));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(io::read_file(path));
}

Mlp load_checkpoint(const std::filesystem::path& path, ModelKind expected_kind) {
  Checkpoint c = load_checkpoint(path);
  if (c.kind != expected_kind)
    throw DataError("checkpoint '" + path.string() + "' has kind " +
                    std::to_string(static_cast<int>(c.kind)) + ", expected " +
                    std::to_string(static_cast<int>(expected_kind)));
  return std::move(c.net);
}

void round_to_f32(Mlp& net) {
  for (Tensor& t : net.params())
    t.value = t.value.cast<float>().cast<double>();
}

}  // namespace hjepa::nn
