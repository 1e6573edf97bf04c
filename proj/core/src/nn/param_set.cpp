// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/param_set.hpp"

#include <algorithm>
#include <utility>

#include "hjepa/error.hpp"

namespace hjepa::nn {

std::size_t ParamSet::add(std::string name, Matrix value, bool trainable) {
  if (contains(name)) throw ShapeError("duplicate tensor name '" + name + "'");
  tensors_.push_back({std::move(name), std::move(value), trainable});
  return tensors_.size() - 1;
}

bool ParamSet::contains(const std::string& name) const {
  return std::any_of(tensors_.begin(), tensors_.end(),
                     [&](const Tensor& t) { return t.name == name; });
}

const Tensor& ParamSet::at(const std::string& name) const {
  for (const Tensor& t : tensors_)
    if (t.name == name) return t;
  throw ShapeError("no tensor named '" + name + "'");
}

Tensor& ParamSet::at(const std::string& name) {
  return const_cast<Tensor&>(std::as_const(*this).at(name));
}

std::size_t ParamSet::numel() const {
  std::size_t n = 0;
  for (const Tensor& t : tensors_) n += static_cast<std::size_t>(t.value.size());
  return n;
}

Vector ParamSet::flatten() const {
  Vector flat(static_cast<Eigen::Index>(numel()));
  Eigen::Index offset = 0;
  for (const Tensor& t : tensors_) {
    flat.segment(offset, t.value.size()) = t.value.reshaped();
    offset += t.value.size();
  }
  return flat;
}

void ParamSet::assign_flat(const Vector& flat) {
  if (static_cast<std::size_t>(flat.size()) != numel())
    throw ShapeError("flat vector has " + std::to_string(flat.size()) +
                     " values, parameter set has " + std::to_string(numel()));
  Eigen::Index offset = 0;
  for (Tensor& t : tensors_) {
    t.value.reshaped() = flat.segment(offset, t.value.size());
    offset += t.value.size();
  }
}

ParamSet ParamSet::zeros_like() const {
  ParamSet out;
  for (const Tensor& t : tensors_)
    out.tensors_.push_back(
        {t.name, Matrix::Zero(t.value.rows(), t.value.cols()), t.trainable});
  return out;
}

bool ParamSet::same_layout(const ParamSet& other) const {
  if (tensors_.size() != other.tensors_.size()) return false;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const Tensor& a = tensors_[i];
    const Tensor& b = other.tensors_[i];
    if (a.name != b.name || a.trainable != b.trainable ||
        a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols())
      return false;
  }
  return true;
}

bool ParamSet::all_finite() const {
  return std::all_of(tensors_.begin(), tensors_.end(),
                     [](const Tensor& t) { return t.value.allFinite(); });
}

void require_same_layout(const ParamSet& a, const ParamSet& b,
                         const char* context) {
  if (!a.same_layout(b))
    throw ShapeError(std::string(context) + ": parameter layouts differ");
}

}  // namespace hjepa::nn
