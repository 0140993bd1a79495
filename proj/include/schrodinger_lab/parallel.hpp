#pragma once

#include <cstddef>
#include <functional>

namespace schrodinger_lab {

// Worker count: SCHRODINGER_LAB_THREADS if set to a positive integer,
// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, count). Each index is handled by exactly one
// worker; callers write results to slot i and reduce in index order, so the
// outcome does not depend on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace schrodinger_lab
