#pragma once

#include <functional>

namespace gradelast {

/// Worker count used by parallel_for (defaults to 1).
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into per-index slots so the outcome is order independent.
/// The first exception raised is rethrown after all workers stop.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace gradelast
