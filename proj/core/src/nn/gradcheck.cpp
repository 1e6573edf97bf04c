// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#include "hjepa/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "hjepa/error.hpp"

namespace hjepa::nn {

GradCheckReport check_gradient(const ProbeFn& f, const Vector& point,
                               const Vector& analytic,
                               const GradCheckOptions& options) {
  if (point.size() != analytic.size())
    throw ShapeError("gradcheck: analytic gradient length mismatch");
  std::vector<Eigen::Index> coords = options.coordinates;
  if (coords.empty()) {
    coords.resize(static_cast<std::size_t>(point.size()));
    for (Eigen::Index i = 0; i < point.size(); ++i)
      coords[static_cast<std::size_t>(i)] = i;
  }
  const std::uint64_t base_region = f(point).region;
  GradCheckReport report;
  Vector probe = point;
  for (Eigen::Index i : coords) {
    if (i < 0 || i >= point.size())
      throw ShapeError("gradcheck: coordinate out of range");
    probe(i) = point(i) + options.step;
    const Probe plus = f(probe);
    probe(i) = point(i) - options.step;
    const Probe minus = f(probe);
    probe(i) = point(i);
    if (plus.region != base_region || minus.region != base_region) {
      ++report.skipped;
      continue;
    }
    const double numeric = (plus.loss - minus.loss) / (2.0 * options.step);
    const double a = analytic(i);
    const double denom =
        std::max({std::abs(a), std::abs(numeric), options.floor});
    const double rel = std::abs(a - numeric) / denom;
    ++report.checked;
    if (rel > report.max_relative_error || report.worst_coordinate < 0) {
      report.max_relative_error = std::max(rel, report.max_relative_error);
      if (rel >= report.max_relative_error) report.worst_coordinate = i;
    }
  }
  return report;
}

}  // namespace hjepa::nn
