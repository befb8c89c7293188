#pragma once

#include <cstddef>
#include <functional>

namespace gsforge {

/// Worker count: GSFORGE_THREADS if set to a positive integer, else 1.
int thread_count();

/// Calls body(k) for k in [0, n), split in contiguous blocks over
/// thread_count() threads. The first exception thrown by any block is
/// rethrown after all threads have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gsforge
