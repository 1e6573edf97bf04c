// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/mlp.hpp"

#include <cmath>
#include <string>

#include "hjepa/error.hpp"

namespace hjepa::nn {
namespace {

// Gathering pays off once most input columns are exactly zero, which is the
// case for standardized frames where inactive pixels carry scale 0.
constexpr double kSparseGatherFraction = 0.5;

std::string layer_name(std::size_t i, const char* suffix) {
  return "layer" + std::to_string(i) + "." + suffix;
}

}  // namespace

Mlp::Mlp(std::vector<LayerSpec> layers, InputTransform transform,
         bool input_skip)
    : layers_(std::move(layers)), transform_(transform), input_skip_(input_skip) {
  if (layers_.empty()) throw ShapeError("mlp needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    if (l.in <= 0 || l.out <= 0)
      throw ShapeError("layer " + std::to_string(i) + " has a zero dimension");
    if (i > 0 && layers_[i - 1].out != l.in)
      throw ShapeError("layer " + std::to_string(i) + " expects " +
                       std::to_string(l.in) + " inputs, previous emits " +
                       std::to_string(layers_[i - 1].out));
    if (l.residual && l.in != l.out)
      throw ShapeError("residual layer " + std::to_string(i) +
                       " must be square");
  }
  const int in = layers_.front().in;
  if (input_skip_ && in < layers_.back().out)
    throw ShapeError("input skip needs at least as many inputs as outputs");
  if (transform_.standardize) {
    params_.add("input.shift", Matrix::Zero(1, in), false);
    params_.add("input.scale", Matrix::Ones(1, in), false);
  }
  first_layer_tensor_ = params_.size();
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    params_.add(layer_name(i, "weight"), Matrix::Zero(layers_[i].in, layers_[i].out));
    params_.add(layer_name(i, "bias"), Matrix::Zero(1, layers_[i].out));
  }
}

int Mlp::input_dim() const { return layers_.empty() ? 0 : layers_.front().in; }
int Mlp::output_dim() const { return layers_.empty() ? 0 : layers_.back().out; }

void Mlp::init_glorot(RandomStream& rng) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Matrix& w = params_[first_layer_tensor_ + 2 * i].value;
    const double a = std::sqrt(6.0 / (layers_[i].in + layers_[i].out));
    std::uniform_real_distribution<double> dist(-a, a);
    // Column-major fill keeps the draw order tied to the declared shape.
    for (Eigen::Index j = 0; j < w.size(); ++j) w.data()[j] = dist(rng);
    params_[first_layer_tensor_ + 2 * i + 1].value.setZero();
  }
}

void Mlp::set_input_statistics(const Vector& shift, const Vector& scale) {
  if (!transform_.standardize)
    throw ShapeError("mlp has no standardization stage");
  if (shift.size() != input_dim() || scale.size() != input_dim())
    throw ShapeError("input statistics length mismatch");
  params_.at("input.shift").value = shift.transpose();
  params_.at("input.scale").value = scale.transpose();
}

Matrix Mlp::apply_transform(const Matrix& x, Vector* norms) const {
  Matrix t = x;
  if (transform_.l2_normalize) {
    Vector n = x.rowwise().norm().cwiseMax(kNormFloor);
    t = n.cwiseInverse().asDiagonal() * x;
    if (norms) *norms = std::move(n);
  }
  if (transform_.standardize) {
    const Matrix& shift = params_[0].value;
    const Matrix& scale = params_[1].value;
    t = (t.rowwise() - shift.row(0)).array().rowwise() * scale.row(0).array();
  }
  return t;
}

Matrix Mlp::forward(const Matrix& x, Cache* cache) const {
  if (x.cols() != input_dim())
    throw ShapeError("mlp expects " + std::to_string(input_dim()) +
                     " input features, got " + std::to_string(x.cols()));
  Vector norms;
  Matrix h = apply_transform(x, cache ? &norms : nullptr);
  if (cache) {
    cache->input = x;
    cache->input_norms = std::move(norms);
    cache->inputs.assign(layers_.size(), Matrix());
    cache->pre.assign(layers_.size(), Matrix());
    cache->active_columns.clear();
    cache->sparse_first = false;
  }
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& spec = layers_[i];
    const Matrix& w = params_[first_layer_tensor_ + 2 * i].value;
    const Matrix& b = params_[first_layer_tensor_ + 2 * i + 1].value;
    Matrix a;
    bool gathered = false;
    if (i == 0) {
      std::vector<Eigen::Index> active;
      for (Eigen::Index c = 0; c < h.cols(); ++c)
        if (!h.col(c).isZero(0.0)) active.push_back(c);
      if (static_cast<double>(active.size()) <
          kSparseGatherFraction * static_cast<double>(h.cols())) {
        gathered = true;
        a = h(Eigen::all, active) * w(active, Eigen::all);
        a.rowwise() += b.row(0);
        if (cache) {
          cache->active_columns = std::move(active);
          cache->sparse_first = true;
        }
      }
    }
    if (!gathered) {
      a = h * w;
      a.rowwise() += b.row(0);
    }
    Matrix out = spec.activation == Activation::kRelu ? Matrix(a.cwiseMax(0.0))
                                                      : a;
    if (spec.residual) out += h;
    if (cache) {
      cache->inputs[i] = std::move(h);
      cache->pre[i] = std::move(a);
    }
    h = std::move(out);
  }
  if (input_skip_) h += x.leftCols(h.cols());
  return h;
}

Mlp::Gradients Mlp::backward(const Cache& cache, const Matrix& grad_out,
                             bool need_input_grad) const {
  if (cache.pre.size() != layers_.size())
    throw ShapeError("backward called with a cache from another network");
  if (grad_out.rows() != cache.input.rows() || grad_out.cols() != output_dim())
    throw ShapeError("output gradient shape mismatch");
  Gradients grads{params_.zeros_like(), Matrix()};
  Matrix g = grad_out;
  for (std::size_t ii = layers_.size(); ii-- > 0;) {
    const LayerSpec& spec = layers_[ii];
    const Matrix& w = params_[first_layer_tensor_ + 2 * ii].value;
    const Matrix& in = cache.inputs[ii];
    Matrix ga = g;
    if (spec.activation == Activation::kRelu)
      ga = (cache.pre[ii].array() > 0.0).select(g, 0.0);
    Matrix& gw = grads.params[first_layer_tensor_ + 2 * ii].value;
    if (ii == 0 && cache.sparse_first) {
      const auto& act = cache.active_columns;
      gw(act, Eigen::all) = in(Eigen::all, act).transpose() * ga;
    } else {
      gw.noalias() = in.transpose() * ga;
    }
    grads.params[first_layer_tensor_ + 2 * ii + 1].value =
        ga.colwise().sum();
    if (ii == 0 && !need_input_grad) return grads;
    Matrix g_prev = ga * w.transpose();
    if (spec.residual) g_prev += g;
    g = std::move(g_prev);
  }
  // g is now dLoss/d(transformed input).
  if (transform_.standardize)
    g = g.array().rowwise() * params_[1].value.row(0).array();
  if (transform_.l2_normalize) {
    // d(x/|x|) = (I - u u^T)/|x| with u = x/|x|; the floor branch is linear.
    const Vector& norms = cache.input_norms;
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double n = norms(r);
      if (cache.input.row(r).norm() >= kNormFloor) {
        const Eigen::RowVectorXd u = cache.input.row(r) / n;
        g.row(r) = (g.row(r) - u * g.row(r).dot(u)) / n;
      } else {
        g.row(r) /= n;
      }
    }
  }
  if (input_skip_) g.leftCols(grad_out.cols()) += grad_out;
  grads.input = std::move(g);
  return grads;
}

std::uint64_t Mlp::activation_signature(const Cache& cache) const {
  std::uint64_t hash = 1469598103934665603ull;
  auto mix = [&hash](std::uint64_t v) {
    hash ^= v;
    hash *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].activation != Activation::kRelu) continue;
    const Matrix& a = cache.pre[i];
    for (Eigen::Index j = 0; j < a.size(); ++j) mix(a.data()[j] > 0.0 ? 1 : 2);
  }
  if (transform_.l2_normalize)
    for (Eigen::Index r = 0; r < cache.input.rows(); ++r)
      mix(cache.input.row(r).norm() >= kNormFloor ? 3 : 4);
  return hash;
}

FeatureStatistics fit_feature_statistics(const Matrix& samples,
                                         double min_std) {
  if (samples.rows() == 0) throw DataError("cannot fit statistics on no samples");
  FeatureStatistics stats;
  stats.shift = samples.colwise().mean().transpose();
  stats.scale.resize(samples.cols());
  const double n = static_cast<double>(samples.rows());
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    const double var =
        (samples.col(c).array() - stats.shift(c)).square().sum() / n;
    const double sd = std::sqrt(var);
    stats.scale(c) = sd >= min_std ? 1.0 / sd : 0.0;
  }
  return stats;
}

Matrix l2_normalize_rows(const Matrix& x) {
  Vector n = x.rowwise().norm().cwiseMax(kNormFloor);
  return n.cwiseInverse().asDiagonal() * x;
}

}  // namespace hjepa::nn
