#pragma once

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conedyn {

// Serial is the reference path; Parallel must produce identical results.
enum class Execution { kSerial, kParallel };

// Thread cap from CONEDYN_THREADS (0 = OpenMP default).
int thread_cap();

// Runs body(i) for i in [0, n). Bodies must only write to per-index slots.
template <class Body>
void for_each_index(std::size_t n, Execution ex, Body&& body) {
  if (ex == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  const int cap = thread_cap();
  const int threads = cap > 0 ? cap : omp_get_max_threads();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace conedyn
