#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lanemden {

/// Worker count used by parallel_chunks (default 1). Results never depend on it.
void set_thread_count(int threads);
int thread_count();

/// Evaluates f(0..count-1) into a vector, spreading indices over worker
/// threads. The output order is fixed, so any reduction over it is
/// independent of the thread count.
std::vector<double> parallel_chunks(std::size_t count, const std::function<double(std::size_t)>& f);

}  // namespace lanemden
