// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace hjepa::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Tensor {
  std::string name;
  Matrix value;
  // Frozen tensors (e.g. fitted input statistics) are skipped by the
  // optimizer and by EMA tracking.
  bool trainable = true;
};

// Ordered, named parameter list. Order is declaration order and is what the
// flat view and the checkpoint format follow.
class ParamSet {
 public:
  ParamSet() = default;

  // Appends a tensor; returns its index. Names must be unique.
  std::size_t add(std::string name, Matrix value, bool trainable = true);

  std::size_t size() const { return tensors_.size(); }
  Tensor& operator[](std::size_t i) { return tensors_[i]; }
  const Tensor& operator[](std::size_t i) const { return tensors_[i]; }
  auto begin() { return tensors_.begin(); }
  auto end() { return tensors_.end(); }
  auto begin() const { return tensors_.begin(); }
  auto end() const { return tensors_.end(); }

  // Throws ShapeError when absent.
  const Tensor& at(const std::string& name) const;
  Tensor& at(const std::string& name);
  bool contains(const std::string& name) const;

  // Total scalar count across all tensors.
  std::size_t numel() const;

  Vector flatten() const;
  // Inverse of flatten; throws ShapeError on a length mismatch.
  void assign_flat(const Vector& flat);

  // Same names, shapes and flags, all values zero.
  ParamSet zeros_like() const;

  // True iff names, shapes and trainable flags agree.
  bool same_layout(const ParamSet& other) const;

  bool all_finite() const;

 private:
  std::vector<Tensor> tensors_;
};

// Throws ShapeError with context when layouts differ.
void require_same_layout(const ParamSet& a, const ParamSet& b,
                         const char* context);

}  // namespace hjepa::nn
