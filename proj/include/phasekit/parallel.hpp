// parallel.hpp: index-parallel loop over independent work items.

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace phasekit {

// Worker count: PHASEKIT_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

// Calls body(i) for i in [0, count). If any call throws, the exception from the lowest
// failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace phasekit
