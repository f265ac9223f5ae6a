#pragma once

#include <cstddef>
#include <functional>

namespace bqlogdet {

/// Worker count: BQLOGDET_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Callers
/// write results into per-index slots and reduce afterwards in index order,
/// so results do not depend on the thread count. If several calls throw, the
/// exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bqlogdet
