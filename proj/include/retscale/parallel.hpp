#pragma once

#include <cstddef>
#include <functional>

namespace retscale {

// Worker pool size: RETSCALE_THREADS if set, otherwise hardware concurrency.
int max_threads();

// Runs body(i) for i in [0, count) on up to max_threads() workers. Callers
// write results into preallocated index slots, so the reduction order (and
// therefore any output derived from it) is independent of scheduling.
// The first exception thrown by a worker is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace retscale
