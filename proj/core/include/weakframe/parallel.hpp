#pragma once

#include <cstddef>
#include <functional>

namespace weakframe {

// Worker count: FRENET_WEAK_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
std::size_t worker_count();

// Runs body(begin, end) over a static partition of [0, n). Each index is
// visited exactly once; the first exception (by chunk order) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace weakframe
