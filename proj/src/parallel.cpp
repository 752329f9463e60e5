#include "qglab/parallel.hpp"

#include <omp.h>

#include <exception>

namespace qglab {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

bool in_parallel_region() { return omp_in_parallel() != 0; }

namespace detail {

void omp_for(std::size_t n, void (*body)(void*, std::size_t), void* ctx, bool dynamic) {
  const auto count = static_cast<long long>(n);
  // The failure with the lowest index is rethrown, as on the serial path.
  long long failed_at = count;
  std::exception_ptr failure;
  auto guarded = [&](long long i) {
    try {
      body(ctx, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qglab_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  };
  if (dynamic) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) guarded(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) guarded(i);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail
}  // namespace qglab
