#pragma once

#include <cstddef>
#include <functional>

namespace cam {

/// Resolves a worker count: `requested` if positive, else the CAM_THREADS
/// environment variable if set and positive, else the hardware count.
int thread_budget(int requested = 0);

/// Runs fn(0..n-1), spreading indices over at most `threads` workers.
/// Blocks until all complete; rethrows the first exception. Each index runs
/// exactly once, so writes into per-index slots are race-free and the
/// combined result is independent of the worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace cam
