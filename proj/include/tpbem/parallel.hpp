#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace tpbem {

// Process-wide worker count for row-parallel assembly loops. 0 = hardware default.
int thread_count();
void set_thread_count(int n);

// Splits [0, n) into contiguous chunks, one per worker. The body must not touch
// shared mutable state outside its own index range.
void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& body);

}  // namespace tpbem
