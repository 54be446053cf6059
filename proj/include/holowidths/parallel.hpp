#pragma once

#include <cstddef>
#include <functional>

namespace holowidths {

/// Worker count: HOLOWIDTHS_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Every index is
/// processed exactly once; callers write results to slot i so output order does
/// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace holowidths
