#pragma once

#include <cstddef>
#include <functional>

namespace ffpm {

// Worker count: FFS_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
unsigned worker_count();

// Runs body(begin, end) over disjoint contiguous chunks of [0, count).
// Each index is visited exactly once, so bodies that write only to
// index-owned output produce the sequential result.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1024);

}  // namespace ffpm
