#pragma once

#include <cstddef>
#include <functional>

namespace dqd {

/// Worker count from DQD_THREADS, else hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, n) on thread_count() workers. Each index is
/// handled exactly once and callers write results by index, so the outcome
/// never depends on the worker count. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dqd
