#pragma once

#include <functional>

namespace endslab {

/// Number of worker threads: explicit request, else ENDSLAB_JOBS, else
/// hardware concurrency (at least 1).
int resolve_jobs(int requested);

/// Run fn(0..n-1) on up to `jobs` threads. Results must be written to
/// preallocated per-index slots; the call is deterministic for pure fn.
void parallel_for_index(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace endslab
