// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/render.hpp"

#include <algorithm>
#include <cmath>

#include "hjepa/error.hpp"

namespace hjepa::plant {
namespace {

constexpr double kCartWidth = 0.5;   // m
constexpr double kCartHeight = 0.3;  // m
constexpr double kCartRow = 0.75;    // cart centre as a fraction of height
constexpr double kPoleHalfWidthPx = 0.5;

struct Box {
  int r0, r1, c0, c1;  // inclusive-exclusive pixel bounds
};

Box clip_box(double x0, double x1, double y0, double y1, int w, int h) {
  Box b;
  b.c0 = std::max(0, static_cast<int>(std::floor(x0)) - 1);
  b.c1 = std::min(w, static_cast<int>(std::ceil(x1)) + 1);
  b.r0 = std::max(0, static_cast<int>(std::floor(y0)) - 1);
  b.r1 = std::min(h, static_cast<int>(std::ceil(y1)) + 1);
  return b;
}

}  // namespace

void RenderConfig::validate() const {
  if (width < 16 || height < 16)
    throw ConfigError("plant.render_width and plant.render_height must be >= 16");
  if (channels != 1 && channels != 3)
    throw ConfigError("plant.render_channels must be 1 or 3");
  if (!(world_window > 0)) throw ConfigError("plant.world_window must be > 0");
  if (supersample < 1) throw ConfigError("plant.render_supersample must be >= 1");
  if (!(pole_half_length > 0))
    throw ConfigError("pole_half_length must be > 0");
}

Observation render_observation(const PlantState& state,
                               const RenderConfig& cfg) {
  const int w = cfg.width;
  const int h = cfg.height;
  const int s = cfg.supersample;
  const double scale = w / cfg.world_window;  // px per metre

  const double cx = w / 2.0 + state.cart_position * scale;
  const double cy = h * kCartRow;
  const double half_w = 0.5 * kCartWidth * scale;
  const double half_h = 0.5 * kCartHeight * scale;

  const double pivot_x = cx;
  const double pivot_y = cy - half_h;
  const double pole_len = 2.0 * cfg.pole_half_length * scale;
  const double dx = pole_len * std::sin(state.pole_angle);
  const double dy = -pole_len * std::cos(state.pole_angle);
  const double len2 = dx * dx + dy * dy;
  const double r2 = kPoleHalfWidthPx * kPoleHalfWidthPx;

  auto in_cart = [&](double px, double py) {
    return std::abs(px - cx) <= half_w && std::abs(py - cy) <= half_h;
  };
  auto in_pole = [&](double px, double py) {
    const double rx = px - pivot_x;
    const double ry = py - pivot_y;
    const double t = std::clamp((rx * dx + ry * dy) / len2, 0.0, 1.0);
    const double ex = rx - t * dx;
    const double ey = ry - t * dy;
    return ex * ex + ey * ey <= r2;
  };

  const Box cart_box =
      clip_box(cx - half_w, cx + half_w, cy - half_h, cy + half_h, w, h);
  const Box pole_box = clip_box(
      std::min(pivot_x, pivot_x + dx) - kPoleHalfWidthPx,
      std::max(pivot_x, pivot_x + dx) + kPoleHalfWidthPx,
      std::min(pivot_y, pivot_y + dy) - kPoleHalfWidthPx,
      std::max(pivot_y, pivot_y + dy) + kPoleHalfWidthPx, w, h);
  const Box box{std::min(cart_box.r0, pole_box.r0),
                std::max(cart_box.r1, pole_box.r1),
                std::min(cart_box.c0, pole_box.c0),
                std::max(cart_box.c1, pole_box.c1)};

  Observation frame(cfg.frame_size(), 0.0f);
  const double inv_samples = 1.0 / (static_cast<double>(s) * s);
  for (int r = box.r0; r < box.r1; ++r) {
    for (int c = box.c0; c < box.c1; ++c) {
      int cart_hits = 0;
      int pole_hits = 0;
      int any_hits = 0;
      for (int i = 0; i < s; ++i) {
        const double py = r + (i + 0.5) / s;
        for (int j = 0; j < s; ++j) {
          const double px = c + (j + 0.5) / s;
          const bool a = in_cart(px, py);
          const bool b = in_pole(px, py);
          cart_hits += a;
          pole_hits += b;
          any_hits += (a || b);
        }
      }
      const std::size_t base =
          (static_cast<std::size_t>(r) * w + c) * cfg.channels;
      if (cfg.channels == 1) {
        frame[base] = static_cast<float>(any_hits * inv_samples);
      } else {
        frame[base + 0] = static_cast<float>(cart_hits * inv_samples);
        frame[base + 2] = static_cast<float>(pole_hits * inv_samples);
      }
    }
  }
  return frame;
}

std::vector<float> stack_frames(std::span<const Observation> history,
                                int kappa) {
  if (history.empty()) throw DataError("stack_frames: empty history");
  if (kappa < 1) throw ConfigError("frame stack must be >= 1");
  const std::size_t n = history.size();
  const std::size_t frame = history.back().size();
  std::vector<float> out;
  out.reserve(frame * kappa);
  for (int i = 0; i < kappa; ++i) {
    // Slot i holds history[n - kappa + i], clamped to the oldest frame.
    const std::ptrdiff_t idx =
        std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(n) - kappa + i);
    const Observation& f = history[static_cast<std::size_t>(idx)];
    if (f.size() != frame) throw ShapeError("stack_frames: frame sizes differ");
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

}  // namespace hjepa::plant
