// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "hjepa/nn/param_set.hpp"
#include "hjepa/random.hpp"

namespace hjepa::nn {

enum class Activation : std::uint8_t { kIdentity = 0, kRelu = 1 };

// y = act(x W + b), plus x when residual (requires in == out).
struct LayerSpec {
  int in = 0;
  int out = 0;
  Activation activation = Activation::kIdentity;
  bool residual = false;

  bool operator==(const LayerSpec&) const = default;
};

// Fixed preprocessing applied before the first layer, in this order:
// optional row-wise L2 normalization, then optional (x - shift) * scale with
// frozen per-feature statistics stored as non-trainable tensors.
struct InputTransform {
  bool l2_normalize = false;
  bool standardize = false;

  bool operator==(const InputTransform&) const = default;
};

inline constexpr double kNormFloor = 1e-8;

// Dense multilayer perceptron over row-major batches (one sample per row).
// Weights are stored in x out so a layer computes X W + b.
class Mlp {
 public:
  // Per-forward activations needed by backward.
  struct Cache {
    Matrix input;                 // raw input
    Vector input_norms;           // row norms when l2_normalize is on
    std::vector<Matrix> inputs;   // input to layer i (after transform for 0)
    std::vector<Matrix> pre;      // pre-activation of layer i
    std::vector<Eigen::Index> active_columns;  // non-zero columns into layer 0
    bool sparse_first = false;
  };

  struct Gradients {
    ParamSet params;  // same layout as params(); frozen tensors stay zero
    Matrix input;     // empty when not requested
  };

  Mlp() = default;
  // Parameters start at zero; call init_glorot or load values.
  // With input_skip the raw input's leading output_dim() columns are added
  // to the output, so the layers model a correction to that prefix.
  explicit Mlp(std::vector<LayerSpec> layers, InputTransform transform = {},
               bool input_skip = false);

  const std::vector<LayerSpec>& layers() const { return layers_; }
  const InputTransform& transform() const { return transform_; }
  bool input_skip() const { return input_skip_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }
  bool empty() const { return layers_.empty(); }
  int input_dim() const;
  int output_dim() const;

  // Weights ~ U(-a, a), a = sqrt(6 / (fan_in + fan_out)); biases zero.
  void init_glorot(RandomStream& rng);

  // Sets the frozen standardization tensors (requires standardize).
  void set_input_statistics(const Vector& shift, const Vector& scale);

  // Throws ShapeError if x.cols() != input_dim().
  Matrix forward(const Matrix& x, Cache* cache = nullptr) const;

  // Reverse-mode pass for dLoss/dOutput = grad_out.
  Gradients backward(const Cache& cache, const Matrix& grad_out,
                     bool need_input_grad = true) const;

  // Hash of every ReLU on/off decision in the cached pass. Finite-difference
  // checks use it to skip probes that cross a kink.
  std::uint64_t activation_signature(const Cache& cache) const;

 private:
  Matrix apply_transform(const Matrix& x, Vector* norms) const;

  std::vector<LayerSpec> layers_;
  InputTransform transform_;
  bool input_skip_ = false;
  ParamSet params_;
  std::size_t first_layer_tensor_ = 0;
};

// Per-feature statistics for InputTransform::standardize: shift is the mean,
// scale is 1/std, and features whose std is below min_std get scale 0 so
// they are ignored entirely.
struct FeatureStatistics {
  Vector shift;
  Vector scale;
};
FeatureStatistics fit_feature_statistics(const Matrix& samples,
                                         double min_std = 1e-6);

// Row-wise x / max(|x|, kNormFloor).
Matrix l2_normalize_rows(const Matrix& x);

}  // namespace hjepa::nn
