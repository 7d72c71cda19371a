#pragma once

#include <cstddef>
#include <functional>

namespace zeroprof::parallel {

/// Worker count: ZEROPROF_THREADS when set to a positive integer, else the hardware count.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 means thread_count()).
/// The first exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace zeroprof::parallel
