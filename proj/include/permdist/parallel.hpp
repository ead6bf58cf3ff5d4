#pragma once

#include <functional>

namespace permdist {

/// Runs fn(i) for i in [0, count) across up to `jobs` worker threads
/// (jobs <= 1 runs inline).  Blocks until done; rethrows the first
/// exception raised by any worker.
void parallel_for(int jobs, int count, const std::function<void(int)>& fn);

}  // namespace permdist
