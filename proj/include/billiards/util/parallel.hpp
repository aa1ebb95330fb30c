#pragma once

#include <cstddef>
#include <functional>

namespace billiards {

/// Worker count: BILLIARDS_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads in contiguous
/// blocks. fn must be safe to call concurrently for distinct i. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace billiards
