// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hjepa {

using RandomStream = std::mt19937_64;

// Derives an independent stream from a root seed and a path of indices,
// e.g. make_stream(seed, {kDatasetTag, trajectory, attempt}). Streams are a
// pure function of (seed, path), which is what lets jobs run in any order.
inline RandomStream make_stream(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * path.size());
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (std::uint64_t p : path) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return RandomStream(seq);
}

inline double standard_normal(RandomStream& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform(RandomStream& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace hjepa
