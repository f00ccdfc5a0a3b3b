#pragma once

#include <cstddef>
#include <functional>

namespace qkt {

/// Number of workers used when a caller passes 0.
int default_workers();

/// Runs body(i) for every i in [0, count) on up to `workers` threads
/// (0 = default_workers()). Work items are claimed dynamically; callers
/// write results into slots keyed by i so output order never depends on
/// scheduling. The first exception thrown by any item is rethrown.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace qkt
