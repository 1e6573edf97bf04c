// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/loss.hpp"

#include <algorithm>

#include "hjepa/error.hpp"

namespace hjepa::nn {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": predicted and target shapes differ");
}

}  // namespace

LossResult cosine_loss(const Matrix& predicted, const Matrix& target) {
  require_same_shape(predicted, target, "cosine_loss");
  const Eigen::Index rows = predicted.rows();
  if (rows == 0) throw ShapeError("cosine_loss: empty batch");
  LossResult out{0.0, Matrix(predicted.rows(), predicted.cols())};
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto p = predicted.row(r);
    const auto t = target.row(r);
    const double np = p.norm();
    const double nt = t.norm();
    const double dot = p.dot(t);
    const double denom = np * nt;
    if (denom > kCosineEpsilon) {
      const double c = dot / denom;
      out.value += 1.0 - c;
      // d(1 - c)/dp = -(t / (|p||t|) - c p / |p|^2)
      out.grad.row(r) = -(t / denom - c * p / (np * np));
    } else {
      out.value += 1.0 - dot / kCosineEpsilon;
      out.grad.row(r) = -t / kCosineEpsilon;
    }
  }
  const double inv = 1.0 / static_cast<double>(rows);
  out.value *= inv;
  out.grad *= inv;
  return out;
}

Vector cosine_distance_rows(const Matrix& predicted, const Matrix& target) {
  require_same_shape(predicted, target, "cosine_distance_rows");
  Vector d(predicted.rows());
  for (Eigen::Index r = 0; r < predicted.rows(); ++r) {
    const double denom = std::max(predicted.row(r).norm() * target.row(r).norm(),
                                  kCosineEpsilon);
    d(r) = 1.0 - predicted.row(r).dot(target.row(r)) / denom;
  }
  return d;
}

LossResult mse_loss(const Matrix& predicted, const Matrix& target) {
  require_same_shape(predicted, target, "mse_loss");
  if (predicted.size() == 0) throw ShapeError("mse_loss: empty batch");
  const double n = static_cast<double>(predicted.size());
  Matrix diff = predicted - target;
  LossResult out;
  out.value = diff.squaredNorm() / n;
  out.grad = (2.0 / n) * diff;
  return out;
}

}  // namespace hjepa::nn
