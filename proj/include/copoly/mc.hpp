#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace copoly {

// Default worker count: COPOLY_THREADS env var, else hardware concurrency.
int default_threads();

// Evaluates task(i) for i = 0..n-1 on a worker pool and returns the results
// ordered by index; the output is independent of the thread count and of
// scheduling, so any subsequent sequential reduction is deterministic.
std::vector<double> mc_map(long n, const std::function<double(long)>& task, int threads = 0);

} // namespace copoly
