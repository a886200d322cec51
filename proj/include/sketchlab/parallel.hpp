#pragma once

#include <cstddef>
#include <functional>

namespace sketchlab {

// Runs fn(i) for every i in [0, count) across `workers` threads (0 means
// hardware concurrency; the count is clamped). fn must write its result into
// a preallocated per-index slot; together with deterministic per-index seeds
// this makes results independent of the schedule. If any invocation throws,
// the exception raised at the smallest index is rethrown after all workers
// finish.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace sketchlab
