#pragma once

#include <cstddef>

#include <omp.h>

namespace qfib {

// Serial reference loop. Every OpenMP kernel in this library has the exact
// same body run through here when jobs <= 1; tests compare the two paths.
template <typename Fn>
void serial_for(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Data-parallel index loop. Results must be written to per-index slots;
// iterations may not share mutable state, which keeps both paths
// deterministic and identical.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    serial_for(n, fn);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(jobs)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    fn(static_cast<std::size_t>(i));
  }
}

}  // namespace qfib
