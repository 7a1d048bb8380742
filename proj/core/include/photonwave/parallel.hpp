#pragma once

#include <cstddef>
#include <functional>

namespace photonwave {

/// Worker count: PHOTONWAVE_THREADS if set (clamped to >= 1), else the
/// hardware concurrency.
int worker_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n) on worker threads.
/// Chunking is deterministic; fn must not touch overlapping state.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace photonwave
