// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <filesystem>

#include <gtest/gtest.h>

#include "hjepa/error.hpp"
#include "hjepa/nn/checkpoint.hpp"
#include "hjepa/nn/gradcheck.hpp"
#include "hjepa/nn/loss.hpp"
#include "hjepa/nn/mlp.hpp"
#include "hjepa/nn/optim.hpp"
#include "test_util.hpp"

namespace hjepa::nn {
namespace {

using testing::CheckInput;
using testing::CheckParams;
using testing::RandomMatrix;

// Scalar test objective: <W_out, net(x)> for a fixed random projection.
struct LinearObjective {
  Matrix projection;
  double operator()(const Matrix& y) const { return (y.array() * projection.array()).sum(); }
};

Mlp ThreeLayerNet(int in, bool residual, InputTransform transform = {}) {
  return Mlp({{in, 7, Activation::kRelu, false},
              {7, 7, Activation::kRelu, residual},
              {7, 3, Activation::kIdentity, false}},
             transform);
}

TEST(MlpTest, RejectsIncompatibleLayers) {
  EXPECT_THROW(Mlp({{4, 5, Activation::kRelu, false}, {6, 2, Activation::kIdentity, false}}),
               ShapeError);
  EXPECT_THROW(Mlp({{4, 5, Activation::kRelu, true}}), ShapeError);
  EXPECT_THROW(Mlp(std::vector<LayerSpec>{}), ShapeError);
}

TEST(MlpTest, ForwardRejectsWrongWidth) {
  Mlp net = ThreeLayerNet(4, false);
  EXPECT_THROW(net.forward(Matrix::Zero(2, 5)), ShapeError);
}

TEST(MlpTest, ZeroParametersGiveZeroOutput) {
  Mlp net = ThreeLayerNet(4, false);
  RandomStream rng(1);
  EXPECT_TRUE(net.forward(RandomMatrix(5, 4, rng)).isZero(0.0));
}

TEST(MlpTest, IdentityLinearLayerCopiesInput) {
  Mlp net({{6, 6, Activation::kIdentity, false}});
  net.params().at("layer0.weight").value = Matrix::Identity(6, 6);
  RandomStream rng(2);
  const Matrix x = RandomMatrix(3, 6, rng);
  EXPECT_EQ(net.forward(x), x);
}

TEST(MlpTest, SeededInitIsBitIdentical) {
  Mlp a = ThreeLayerNet(4, true);
  Mlp b = ThreeLayerNet(4, true);
  RandomStream ra(3);
  RandomStream rb(3);
  a.init_glorot(ra);
  b.init_glorot(rb);
  RandomStream rx(4);
  const Matrix x = RandomMatrix(8, 4, rx);
  EXPECT_EQ(a.forward(x), b.forward(x));
}

TEST(MlpTest, GlorotBoundsAndZeroBias) {
  Mlp net({{30, 20, Activation::kRelu, false}});
  RandomStream rng(5);
  net.init_glorot(rng);
  const double a = std::sqrt(6.0 / 50.0);
  EXPECT_LE(net.params().at("layer0.weight").value.cwiseAbs().maxCoeff(), a);
  EXPECT_TRUE(net.params().at("layer0.bias").value.isZero(0.0));
}

TEST(MlpTest, ZeroOutputGradientGivesZeroGradients) {
  Mlp net = ThreeLayerNet(4, true);
  RandomStream rng(6);
  net.init_glorot(rng);
  Mlp::Cache cache;
  net.forward(RandomMatrix(5, 4, rng), &cache);
  const Mlp::Gradients g = net.backward(cache, Matrix::Zero(5, 3));
  EXPECT_TRUE(g.params.flatten().isZero(0.0));
  EXPECT_TRUE(g.input.isZero(0.0));
}

TEST(MlpTest, LinearNetInputGradientIsWeightProduct) {
  Mlp net({{5, 4, Activation::kIdentity, false}, {4, 3, Activation::kIdentity, false}});
  RandomStream rng(7);
  net.init_glorot(rng);
  const Matrix x = RandomMatrix(2, 5, rng);
  const Matrix proj = RandomMatrix(2, 3, rng);
  Mlp::Cache cache;
  net.forward(x, &cache);
  const Matrix expected = proj * (net.params().at("layer0.weight").value *
                                  net.params().at("layer1.weight").value)
                                     .transpose();
  EXPECT_LT((net.backward(cache, proj).input - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MlpTest, ParameterGradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng(seed);
    Mlp net = ThreeLayerNet(4, seed % 2 == 0);
    net.init_glorot(rng);
    for (Tensor& t : net.params()) t.value += 0.1 * RandomMatrix(t.value.rows(), t.value.cols(), rng);
    const Matrix x = RandomMatrix(3, 4, rng);
    const Matrix proj = RandomMatrix(3, 3, rng);
    const GradCheckReport r = CheckParams(net, x, proj);
    EXPECT_LT(r.max_relative_error, 1e-4) << "seed " << seed;
    EXPECT_GT(r.checked, r.skipped);
  }
}

TEST(MlpTest, InputGradientsThroughTransformsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng(1000 + seed);
    InputTransform t{seed % 2 == 0, seed % 3 != 0};
    Mlp net = ThreeLayerNet(5, true, t);
    net.init_glorot(rng);
    if (t.standardize) {
      Vector scale = RandomMatrix(5, 1, rng).cwiseAbs();
      scale(2) = 0.0;  // a frozen, ignored feature
      net.set_input_statistics(RandomMatrix(5, 1, rng), scale);
    }
    const Matrix x = RandomMatrix(3, 5, rng);
    const Matrix proj = RandomMatrix(3, 3, rng);
    EXPECT_LT(CheckInput(net, x, proj).max_relative_error, 1e-4) << "seed " << seed;
    EXPECT_LT(CheckParams(net, x, proj).max_relative_error, 1e-4) << "seed " << seed;
  }
}

TEST(MlpTest, SparseInputPathMatchesDense) {
  RandomStream rng(8);
  Mlp net({{40, 6, Activation::kRelu, false}, {6, 2, Activation::kIdentity, false}});
  net.init_glorot(rng);
  Matrix x = Matrix::Zero(4, 40);
  x.col(3) = RandomMatrix(4, 1, rng);
  x.col(17) = RandomMatrix(4, 1, rng);
  Matrix dense = x;
  dense(0, 0) = 1e-300;  // defeats the sparsity shortcut, negligible value
  for (int c = 1; c < 40; ++c)
    if (dense.col(c).isZero(0.0)) dense(0, c) = 1e-300;
  Mlp::Cache cs;
  Mlp::Cache cd;
  const Matrix ys = net.forward(x, &cs);
  const Matrix yd = net.forward(dense, &cd);
  EXPECT_TRUE(cs.sparse_first);
  EXPECT_FALSE(cd.sparse_first);
  EXPECT_LT((ys - yd).cwiseAbs().maxCoeff(), 1e-12);
  const Matrix proj = RandomMatrix(4, 2, rng);
  const Mlp::Gradients gs = net.backward(cs, proj);
  const Mlp::Gradients gd = net.backward(cd, proj);
  EXPECT_LT((gs.params.flatten() - gd.params.flatten()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((gs.input - gd.input).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MlpTest, InputSkipAddsLeadingInputColumns) {
  EXPECT_THROW(Mlp({{3, 4, Activation::kIdentity, false}}, {}, true), ShapeError);
  Mlp plain({{5, 6, Activation::kRelu, false}, {6, 2, Activation::kIdentity, false}});
  Mlp skip({{5, 6, Activation::kRelu, false}, {6, 2, Activation::kIdentity, false}},
           {}, true);
  RandomStream rng(21);
  plain.init_glorot(rng);
  skip.params().assign_flat(plain.params().flatten());
  const Matrix x = RandomMatrix(4, 5, rng);
  EXPECT_EQ(skip.forward(x), plain.forward(x) + x.leftCols(2));
  // Zero layers make the skip net the projection onto its leading columns.
  Mlp zero({{5, 2, Activation::kIdentity, false}}, {}, true);
  EXPECT_EQ(zero.forward(x), x.leftCols(2));
}

TEST(MlpTest, InputSkipGradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 30; seed < 34; ++seed) {
    RandomStream rng(seed);
    Mlp net({{6, 8, Activation::kRelu, false}, {8, 3, Activation::kIdentity, false}},
            {}, true);
    net.init_glorot(rng);
    const Matrix x = RandomMatrix(3, 6, rng);
    const Matrix proj = RandomMatrix(3, 3, rng);
    EXPECT_LT(CheckInput(net, x, proj).max_relative_error, 1e-4) << "seed " << seed;
    EXPECT_LT(CheckParams(net, x, proj).max_relative_error, 1e-4) << "seed " << seed;
  }
}

TEST(FeatureStatisticsTest, ConstantFeaturesGetZeroScale) {
  Matrix s(4, 2);
  s << 1, 5, 2, 5, 3, 5, 4, 5;
  const FeatureStatistics st = fit_feature_statistics(s);
  EXPECT_DOUBLE_EQ(st.shift(0), 2.5);
  EXPECT_DOUBLE_EQ(st.scale(0), 1.0 / std::sqrt(1.25));
  EXPECT_EQ(st.scale(1), 0.0);
}

TEST(CosineLossTest, Anchors) {
  Matrix a(1, 3);
  a << 1, 2, 3;
  EXPECT_NEAR(cosine_loss(a, a).value, 0.0, 1e-15);
  EXPECT_NEAR(cosine_loss(-a, a).value, 2.0, 1e-15);
  Matrix b(1, 3);
  b << 3, 0, -1;
  EXPECT_NEAR(cosine_loss(a, b).value, 1.0, 1e-15);
}

TEST(CosineLossTest, RangeAndScaleInvariance) {
  RandomStream rng(9);
  for (int i = 0; i < 200; ++i) {
    const Matrix p = RandomMatrix(4, 6, rng);
    const Matrix t = RandomMatrix(4, 6, rng);
    const double l = cosine_loss(p, t).value;
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 2.0);
    const double a = uniform(rng, 0.01, 100.0);
    const double b = uniform(rng, 0.01, 100.0);
    EXPECT_NEAR(cosine_loss(a * p, b * t).value, l, 1e-12);
  }
}

TEST(CosineLossTest, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng(2000 + seed);
    const Matrix p = RandomMatrix(3, 5, rng);
    const Matrix t = RandomMatrix(3, 5, rng);
    const LossResult r = cosine_loss(p, t);
    ProbeFn f = [&](const Vector& v) {
      return Probe{cosine_loss(v.reshaped(3, 5), t).value, 0};
    };
    EXPECT_LT(check_gradient(f, p.reshaped(), r.grad.reshaped()).max_relative_error, 1e-4)
        << "seed " << seed;
  }
}

TEST(CosineLossTest, ZeroVectorIsGuarded) {
  const Matrix z = Matrix::Zero(1, 4);
  Matrix t(1, 4);
  t << 1, 0, 0, 0;
  const LossResult r = cosine_loss(z, t);
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_TRUE(r.grad.allFinite());
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(MseLossTest, GradientMatchesFiniteDifferences) {
  RandomStream rng(10);
  const Matrix p = RandomMatrix(4, 2, rng);
  const Matrix t = RandomMatrix(4, 2, rng);
  ProbeFn f = [&](const Vector& v) { return Probe{mse_loss(v.reshaped(4, 2), t).value, 0}; };
  EXPECT_LT(check_gradient(f, p.reshaped(), mse_loss(p, t).grad.reshaped()).max_relative_error,
            1e-6);
}

ParamSet Scalar(double v) {
  ParamSet p;
  p.add("p", Matrix::Constant(1, 1, v));
  return p;
}

TEST(SgdTest, ZeroRateLeavesParamsUnchanged) {
  ParamSet p = Scalar(1.0);
  sgd_step(p, Scalar(5.0), 0.0);
  EXPECT_EQ(p[0].value(0, 0), 1.0);
}

TEST(SgdTest, QuadraticStep) {
  ParamSet p = Scalar(1.0);
  // d/dp (p^2 / 2) = p
  sgd_step(p, Scalar(p[0].value(0, 0)), 0.1);
  EXPECT_DOUBLE_EQ(p[0].value(0, 0), 0.9);
}

TEST(SgdTest, ConvexQuadraticDecreasesMonotonically) {
  // f(p) = 1/2 p^T H p with curvature up to 4; lr < 2/4.
  Matrix h(2, 2);
  h << 4, 1, 1, 2;
  ParamSet p;
  p.add("p", (Matrix(2, 1) << 3, -2).finished());
  auto loss = [&] { return 0.5 * (p[0].value.transpose() * h * p[0].value)(0, 0); };
  double prev = loss();
  for (int i = 0; i < 100; ++i) {
    ParamSet g = p.zeros_like();
    g[0].value = h * p[0].value;
    sgd_step(p, g, 0.2);
    const double cur = loss();
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(SgdTest, NonFiniteGradientIsRejected) {
  ParamSet p = Scalar(1.0);
  const StepReport r = sgd_step(p, Scalar(std::nan("")), 0.1);
  EXPECT_FALSE(r.applied);
  EXPECT_EQ(p[0].value(0, 0), 1.0);
}

TEST(SgdTest, ClipsGlobalNorm) {
  ParamSet p;
  p.add("a", Matrix::Constant(1, 1, 0.0));
  p.add("b", Matrix::Constant(1, 1, 0.0));
  ParamSet g = p.zeros_like();
  g[0].value(0, 0) = 3;
  g[1].value(0, 0) = 4;
  const StepReport r = sgd_step(p, g, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(r.grad_norm, 5.0);
  EXPECT_DOUBLE_EQ(p[0].value(0, 0), -0.6);
  EXPECT_DOUBLE_EQ(p[1].value(0, 0), -0.8);
}

TEST(SgdTest, FrozenTensorsAreNotUpdated) {
  ParamSet p;
  p.add("w", Matrix::Constant(1, 1, 1.0));
  p.add("stat", Matrix::Constant(1, 1, 1.0), false);
  ParamSet g = p.zeros_like();
  g[0].value(0, 0) = 1;
  g[1].value(0, 0) = 1;
  sgd_step(p, g, 0.5);
  EXPECT_EQ(p[0].value(0, 0), 0.5);
  EXPECT_EQ(p[1].value(0, 0), 1.0);
}

TEST(SgdConfigTest, Validation) {
  SgdConfig c;
  EXPECT_NO_THROW(c.validate());
  c.learning_rate = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(EmaTest, Anchors) {
  ParamSet t = Scalar(2.0);
  ema_update(t, Scalar(4.0), 1.0);
  EXPECT_EQ(t[0].value(0, 0), 2.0);
  ema_update(t, Scalar(4.0), 0.5);
  EXPECT_EQ(t[0].value(0, 0), 3.0);
  ema_update(t, Scalar(7.0), 0.0);
  EXPECT_EQ(t[0].value(0, 0), 7.0);
}

TEST(EmaTest, GeometricConvergenceToConstantOnline) {
  RandomStream rng(11);
  ParamSet target;
  target.add("w", RandomMatrix(3, 4, rng));
  ParamSet online;
  online.add("w", RandomMatrix(3, 4, rng));
  const Matrix gap0 = target[0].value - online[0].value;
  const double eta = 0.9;
  for (int n = 1; n <= 50; ++n) {
    ema_update(target, online, eta);
    const Matrix gap = target[0].value - online[0].value;
    const Matrix expected = std::pow(eta, n) * gap0;
    EXPECT_LT((gap - expected).cwiseAbs().maxCoeff(), 1e-12) << "n " << n;
  }
}

TEST(EmaTest, ShapeMismatchThrows) {
  ParamSet a = Scalar(1.0);
  ParamSet b;
  b.add("p", Matrix::Zero(2, 1));
  EXPECT_THROW(ema_update(a, b, 0.5), ShapeError);
}

TEST(ParamSetTest, FlattenRoundTrip) {
  RandomStream rng(12);
  ParamSet p;
  p.add("a", RandomMatrix(2, 3, rng));
  p.add("b", RandomMatrix(1, 4, rng), false);
  const Vector flat = p.flatten();
  EXPECT_EQ(flat.size(), 10);
  ParamSet q = p.zeros_like();
  q.assign_flat(flat);
  EXPECT_EQ(q.flatten(), flat);
  EXPECT_TRUE(q.same_layout(p));
  EXPECT_THROW(q.assign_flat(Vector::Zero(3)), ShapeError);
  EXPECT_THROW(p.add("a", Matrix::Zero(1, 1)), ShapeError);
}

TEST(CheckpointTest, RoundTripPreservesLayoutAndFloatValues) {
  RandomStream rng(13);
  Mlp net({{6, 5, Activation::kRelu, false}, {5, 5, Activation::kIdentity, true}},
          {true, true});
  net.init_glorot(rng);
  net.set_input_statistics(RandomMatrix(6, 1, rng), RandomMatrix(6, 1, rng));
  const io::Bytes bytes = encode_checkpoint(net, ModelKind::kActor);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "HJPC");
  const Checkpoint c = decode_checkpoint(bytes);
  EXPECT_EQ(c.kind, ModelKind::kActor);
  EXPECT_EQ(c.net.layers(), net.layers());
  EXPECT_EQ(c.net.transform(), net.transform());
  Mlp rounded = net;
  round_to_f32(rounded);
  EXPECT_EQ(c.net.params().flatten(), rounded.params().flatten());
  EXPECT_EQ(encode_checkpoint(c.net, ModelKind::kActor), bytes);
  EXPECT_FALSE(c.net.input_skip());
}

TEST(CheckpointTest, RoundTripKeepsInputSkip) {
  Mlp net({{4, 3, Activation::kRelu, false}, {3, 2, Activation::kIdentity, false}},
          {}, true);
  RandomStream rng(14);
  net.init_glorot(rng);
  const Checkpoint c = decode_checkpoint(encode_checkpoint(net, ModelKind::kPredictorHigh));
  EXPECT_TRUE(c.net.input_skip());
  const Matrix x = RandomMatrix(2, 4, rng);
  Mlp rounded = net;
  round_to_f32(rounded);
  EXPECT_EQ(c.net.forward(x), rounded.forward(x));
}

TEST(CheckpointTest, CorruptInputIsADataError) {
  Mlp net({{2, 2, Activation::kIdentity, false}});
  io::Bytes bytes = encode_checkpoint(net, ModelKind::kActor);
  io::Bytes truncated(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(decode_checkpoint(truncated), DataError);
  bytes[0] = 'X';
  EXPECT_THROW(decode_checkpoint(bytes), DataError);
}

TEST(CheckpointTest, FileRoundTripChecksKind) {
  const auto path = std::filesystem::temp_directory_path() / "hjepa_nn_test.hjpc";
  Mlp net({{2, 3, Activation::kRelu, false}});
  save_checkpoint(path, net, ModelKind::kDecoder);
  EXPECT_NO_THROW(load_checkpoint(path, ModelKind::kDecoder));
  EXPECT_THROW(load_checkpoint(path, ModelKind::kActor), DataError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace hjepa::nn
