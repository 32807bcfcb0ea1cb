#pragma once

#include <cstddef>
#include <functional>

namespace rsv {

/// Worker count: RSV_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Iterations must be independent; results are
/// identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rsv
