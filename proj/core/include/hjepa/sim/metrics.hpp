// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hjepa::sim {

// One CSV row; absent fields are written as empty cells.
struct MetricRow {
  std::string method;
  std::optional<int> horizon_offset;
  std::optional<double> control_error;  // mean |u - u*| / (u_max - u_min)
  std::optional<double> comm_bits;      // per update
  std::optional<double> control_score;
  std::optional<long long> devices_supported;
  std::optional<double> target_snr_db;
};

inline constexpr const char* kMetricsHeader =
    "method,horizon_offset,control_error,comm_bits,control_score,"
    "devices_supported,target_snr_db";

// Header plus one line per row, reals with 17 significant digits.
std::string format_metrics(std::span<const MetricRow> rows);
void emit_metrics(std::span<const MetricRow> rows,
                  const std::filesystem::path& path);
// Inverse of format_metrics; throws DataError on malformed input.
std::vector<MetricRow> parse_metrics(const std::string& text);

// One-sided paired t-test of H1: mean(a - b) > 0.
struct PairedTest {
  int n = 0;
  double mean_difference = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;
};
PairedTest paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace hjepa::sim
