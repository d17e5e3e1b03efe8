#pragma once

#include <cstddef>
#include <functional>

namespace curlam {

// Process-wide worker count used by the potential/assembly loops.
// 0 means "auto" (hardware concurrency). Parallelism only ever splits
// independent output points across threads; per-point summation order is
// fixed, so results are bit-identical for every thread count.
void set_thread_count(int k);
int thread_count();

// Runs fn(i) for i in [0, n), split into contiguous blocks over the
// configured worker threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace curlam
