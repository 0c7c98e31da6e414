#pragma once

#include <cstdint>
#include <functional>

namespace sze {

// Global worker cap, settable once from the CLI (--threads). 0 = one worker
// per hardware thread.
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over [0, count) in contiguous chunks, one chunk per
// worker. Writes must be disjoint; chunk boundaries depend only on `count`
// and the worker count.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace sze
