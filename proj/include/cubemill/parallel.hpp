#pragma once

#include <cstddef>
#include <functional>

namespace cubemill {

// Worker count from CUBEMILL_THREADS; 0 or unset means hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so
// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cubemill
