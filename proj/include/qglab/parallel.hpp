#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>

namespace qglab {

// Every kernel in the library runs through parallel_for. Each output element
// is produced by exactly one iteration with a fixed inner summation order, so
// results are bit-identical between the serial reference path and any thread
// count on the OpenMP path.
enum class Execution { serial, parallel };

void set_thread_count(int threads);
int thread_count();

// True when already inside an OpenMP parallel region; nested kernels then
// fall back to the serial path.
bool in_parallel_region();

namespace detail {
void omp_for(std::size_t n, void (*body)(void*, std::size_t), void* ctx, bool dynamic);
}

template <class F>
void parallel_for(Execution exec, std::size_t n, F&& body, bool dynamic = false) {
  if (exec == Execution::serial || n < 2 || in_parallel_region()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  auto trampoline = [](void* ctx, std::size_t i) { (*static_cast<std::remove_reference_t<F>*>(ctx))(i); };
  detail::omp_for(n, trampoline, &body, dynamic);
}

}  // namespace qglab
