// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hjepa {

// Shortest-round-trip-safe rendering with 17 significant digits.
std::string format_real(double v);

// Strict parsers; throw ConfigError naming `what` on malformed input.
double parse_real(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

// Splits on commas, trimming blanks; empty input gives an empty list.
std::vector<std::string> split_list(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace hjepa
