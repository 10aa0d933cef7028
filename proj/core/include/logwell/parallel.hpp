#pragma once

#include <cstddef>
#include <functional>

namespace logwell::par {

// Worker cap. Defaults to the LOGWELL_THREADS environment variable when set,
// otherwise std::thread::hardware_concurrency(). Always >= 1.
std::size_t worker_limit();
void set_worker_limit(std::size_t n);

// Runs fn(0..n-1), possibly across threads. Each index must write only its
// own output slot; results are then independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace logwell::par
