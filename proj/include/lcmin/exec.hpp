/**
 * @file exec.hpp
 * @brief Serial / OpenMP execution switch for the data-parallel kernels.
 *
 * Every kernel in the library loops over independent indices (lattice points,
 * sampled slopes, (alpha, beta) pairs) and writes into a slot owned by that
 * index. `Exec::serial` runs the plain loop and is the reference the tests
 * compare against; `Exec::parallel` distributes the same loop body with
 * OpenMP. Reductions are performed afterwards, serially and in index order,
 * so both modes produce bit-identical results.
 */
#pragma once

#include <cstddef>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lcmin {

enum class Exec { serial, parallel };

/// Runs fn(i) for i in [0, n). An exception thrown by any iteration is
/// rethrown after the loop; when several iterations throw, the one with the
/// smallest index wins.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
  std::exception_ptr first_error;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(lcmin_for_each_index)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lcmin
