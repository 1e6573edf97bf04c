// Copyright 2026 The hjepa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace hjepa::sim {

// Runs fn(0) .. fn(count - 1) on up to `jobs` threads. Each index must write
// only its own output slot; callers reduce the slots in index order so the
// result does not depend on `jobs`. The exception of the lowest failing index
// is rethrown after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace hjepa::sim
