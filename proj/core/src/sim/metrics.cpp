// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/sim/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "hjepa/error.hpp"
#include "hjepa/format.hpp"
#include "hjepa/io/binary.hpp"

namespace hjepa::sim {
namespace {

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

std::string format_metrics(std::span<const MetricRow> rows) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const MetricRow& r : rows) {
    if (r.method.find_first_of(",\n\"") != std::string::npos)
      throw DataError("method tag '" + r.method + "' cannot be written to CSV");
    out += r.method + "," + cell(r.horizon_offset) + "," + cell(r.control_error) +
           "," + cell(r.comm_bits) + "," + cell(r.control_score) + "," +
           cell(r.devices_supported) + "," + cell(r.target_snr_db) + "\n";
  }
  return out;
}

void emit_metrics(std::span<const MetricRow> rows,
                  const std::filesystem::path& path) {
  io::write_text_file(path, format_metrics(rows));
}

std::vector<MetricRow> parse_metrics(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw DataError("metrics CSV has an unexpected header");
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    const std::vector<std::string> c = split_csv_line(line);
    if (c.size() != 7) throw DataError("metrics CSV row has " + std::to_string(c.size()) + " cells");
    MetricRow r;
    r.method = c[0];
    try {
      if (!c[1].empty()) r.horizon_offset = static_cast<int>(parse_int(c[1], "horizon_offset"));
      if (!c[2].empty()) r.control_error = parse_real(c[2], "control_error");
      if (!c[3].empty()) r.comm_bits = parse_real(c[3], "comm_bits");
      if (!c[4].empty()) r.control_score = parse_real(c[4], "control_score");
      if (!c[5].empty()) r.devices_supported = parse_int(c[5], "devices_supported");
      if (!c[6].empty()) r.target_snr_db = parse_real(c[6], "target_snr_db");
    } catch (const ConfigError& e) {
      throw DataError(std::string("metrics CSV: ") + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

PairedTest paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw DataError("paired t-test needs two equal samples of size >= 2");
  PairedTest r;
  r.n = static_cast<int>(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= r.n;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double se = std::sqrt(ss / (r.n - 1) / r.n);
  r.mean_difference = mean;
  if (se == 0.0) {
    r.t_statistic = mean > 0   ? std::numeric_limits<double>::infinity()
                    : mean < 0 ? -std::numeric_limits<double>::infinity()
                               : 0.0;
    r.p_value = mean > 0 ? 0.0 : 1.0;
    return r;
  }
  r.t_statistic = mean / se;
  const boost::math::students_t dist(r.n - 1);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.t_statistic));
  return r;
}

}  // namespace hjepa::sim
