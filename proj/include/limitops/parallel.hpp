#pragma once

#include <cstddef>
#include <functional>

namespace limitops
{

// Process-wide worker count used by parallelFor (default 1).
void setThreadCount(int n);
int threadCount();

// Calls fn(i) for i in [0, n). Results must be written to per-index slots so that the
// outcome does not depend on scheduling.
void parallelFor(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace limitops
