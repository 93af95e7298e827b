#pragma once

#include <cstddef>
#include <functional>

namespace cosa {

/// Worker count used by the parallel kernels. 0 selects hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/**
 * Runs body(begin, end) over contiguous chunks of [0, n).
 *
 * Each index is handled by exactly one chunk and kernels never reduce across
 * chunks, so results are bit-identical for any thread count.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cosa
