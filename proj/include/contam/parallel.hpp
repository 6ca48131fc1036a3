#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace contam {

// Static-schedule parallel loop over [0, n). Every kernel built on this
// writes to disjoint slots, so parallel and serial runs produce identical
// bytes; the *_serial twins exist as the reference the tests compare
// against and the benchmark baseline.
template <typename F>
void parallel_for(size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); i++) {
    body(static_cast<size_t>(i));
  }
#else
  for (size_t i = 0; i < n; i++) body(i);
#endif
}

template <typename F>
void serial_for(size_t n, F&& body) {
  for (size_t i = 0; i < n; i++) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace contam
