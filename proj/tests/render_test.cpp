// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "hjepa/error.hpp"
#include "hjepa/render.hpp"

namespace hjepa::plant {
namespace {

int CountForeground(const Observation& frame) {
  return static_cast<int>(
      std::count_if(frame.begin(), frame.end(), [](float v) { return v > 0; }));
}

TEST(RenderTest, IsDeterministic) {
  const RenderConfig cfg;
  const PlantState s{0.3, 0.1, -0.04, 0.2};
  EXPECT_EQ(render_observation(s, cfg), render_observation(s, cfg));
}

TEST(RenderTest, HasExpectedLength) {
  RenderConfig cfg;
  EXPECT_EQ(render_observation({}, cfg).size(), 32u * 32u);
  cfg.channels = 3;
  cfg.width = 20;
  EXPECT_EQ(render_observation({}, cfg).size(), 20u * 32u * 3u);
}

TEST(RenderTest, UprightFrameIsMirrorSymmetric) {
  for (int width : {16, 32, 33}) {
    RenderConfig cfg;
    cfg.width = width;
    const Observation f = render_observation({}, cfg);
    for (int r = 0; r < cfg.height; ++r)
      for (int c = 0; c < cfg.width; ++c)
        EXPECT_EQ(f[r * cfg.width + c], f[r * cfg.width + (cfg.width - 1 - c)])
            << "width " << width << " pixel (" << r << "," << c << ")";
  }
}

TEST(RenderTest, PixelsInUnitRangeWithForeground) {
  RandomStream rng(11);
  for (int channels : {1, 3}) {
    RenderConfig cfg;
    cfg.channels = channels;
    for (int i = 0; i < 300; ++i) {
      const PlantState s{uniform(rng, -2.2, 2.2), 0.0,
                         uniform(rng, -1.5, 1.5), 0.0};
      const Observation f = render_observation(s, cfg);
      for (float v : f) {
        ASSERT_GE(v, 0.0f);
        ASSERT_LE(v, 1.0f);
      }
      EXPECT_GT(CountForeground(f), 0);
    }
  }
}

TEST(RenderTest, RgbSeparatesCartAndPole) {
  RenderConfig cfg;
  cfg.channels = 3;
  const Observation f = render_observation({}, cfg);
  float green = 0.0f;
  float red = 0.0f;
  float blue = 0.0f;
  for (std::size_t i = 0; i < f.size(); i += 3) {
    red += f[i];
    green += f[i + 1];
    blue += f[i + 2];
  }
  EXPECT_GT(red, 0.0f);
  EXPECT_GT(blue, 0.0f);
  EXPECT_EQ(green, 0.0f);
}

TEST(RenderTest, DistinguishesStatesOnePixelApart) {
  const RenderConfig cfg;
  const double pixel = cfg.world_window / cfg.width;
  // The pole tip travels 2 * half_length * angle metres.
  const double angle_pixel = pixel / (2.0 * cfg.pole_half_length);
  RandomStream rng(12);
  for (int i = 0; i < 300; ++i) {
    const PlantState s{uniform(rng, -1.5, 1.5), 0.0, uniform(rng, -0.3, 0.3),
                       0.0};
    PlantState moved = s;
    moved.cart_position += (uniform(rng, 0, 1) < 0.5 ? -1 : 1) *
                           uniform(rng, 1.01, 3.0) * pixel;
    EXPECT_NE(render_observation(s, cfg), render_observation(moved, cfg));
    PlantState tilted = s;
    tilted.pole_angle += (uniform(rng, 0, 1) < 0.5 ? -1 : 1) *
                         uniform(rng, 1.01, 3.0) * angle_pixel;
    EXPECT_NE(render_observation(s, cfg), render_observation(tilted, cfg));
  }
}

TEST(RenderTest, ValidateRejectsTinyFrames) {
  RenderConfig cfg;
  cfg.width = 15;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.channels = 2;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(StackFramesTest, SingleFrameStackIsLatest) {
  const std::vector<Observation> history{{1, 2}, {3, 4}};
  EXPECT_EQ(stack_frames(history, 1), (std::vector<float>{3, 4}));
}

TEST(StackFramesTest, ConcatenatesOldestFirst) {
  const std::vector<Observation> history{{9, 9}, {1, 2}, {3, 4}};
  EXPECT_EQ(stack_frames(history, 2), (std::vector<float>{1, 2, 3, 4}));
}

TEST(StackFramesTest, ReplicatesAtEpisodeStart) {
  const std::vector<Observation> history{{5, 6}};
  EXPECT_EQ(stack_frames(history, 2), (std::vector<float>{5, 6, 5, 6}));
  EXPECT_EQ(stack_frames(history, 3), (std::vector<float>{5, 6, 5, 6, 5, 6}));
}

TEST(StackFramesTest, EmptyHistoryIsAnError) {
  EXPECT_THROW(stack_frames({}, 2), DataError);
}

}  // namespace
}  // namespace hjepa::plant
